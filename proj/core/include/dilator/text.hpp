#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dilator/dendrogram.hpp"
#include "dilator/pi.hpp"
#include "dilator/predilator.hpp"

namespace dilator {

// predilator
// term NAME arity=K sigma=P0,...,P(K-1)
// dist NAME1 NAME2 M
// Terms are listed in increasing term order; every pair of distinct terms needs a
// dist line. Blank lines and lines starting with '#' are ignored.
Predilator parse_predilator(const std::string& text);
std::string print_predilator(const Predilator& p);

// Optional header `dendrogram`, then one s-expression per root:
// `(eE child ...)` for a non-terminal with e-code E, `*` for a terminal.
Dendrogram parse_dendrogram(const std::string& text);
std::string print_dendrogram(const Dendrogram& d);

// Optional header `trekkable`, then `node ID parent=ID|- e=NAT|-` lines with ids
// 0..n-1. Siblings are ordered by id.
Dendrogram parse_trekkable(const std::string& text);
std::string print_trekkable(const Dendrogram& d);

// Comma separated naturals; `-` or nothing for the empty sequence.
Seq parse_seq(const std::string& text);
std::string print_seq(const Seq& s);

// `tree SPEC` with SPEC a builtin name or `table`; tables list `member U V` lines.
DecidableTree parse_tree_spec(const std::string& text);

// key=value lines (game configuration files).
std::map<std::string, std::string> parse_key_values(const std::string& text);

}  // namespace dilator
