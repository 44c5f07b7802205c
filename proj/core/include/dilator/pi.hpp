#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dilator/dendrogram.hpp"
#include "dilator/predilator.hpp"

namespace dilator {

// Membership predicate over pairs of equal-length sequences. Must be pure.
struct DecidableTree {
  std::string name;
  std::function<bool(const Seq&, const Seq&)> member;
};

// full | empty | bounded:B | descending-run | seeded:K
DecidableTree builtin_tree(const std::string& spec);
DecidableTree table_tree(std::vector<std::pair<Seq, Seq>> members, std::string name = "table");

// Members (u, v) with |u| = |v| <= depth and entries < alphabet that have a
// non-member prefix pair.
std::vector<std::pair<Seq, Seq>> closure_violations(const DecidableTree& t, int depth, int alphabet);

std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b);
// k -> cantor_pair(s(k), t(k)); throws ArityMismatch on unequal lengths.
Seq pair_sequences(const Seq& s, const Seq& t);

// Linear order on 0..|s|-1.
struct StageOrder {
  std::vector<int> sorted;  // elements in increasing order
  std::vector<int> rank;    // rank[i] = position of i
  int size() const { return static_cast<int>(sorted.size()); }
  bool less(int i, int j) const { return rank.at(i) < rank.at(j); }
  FiniteOrder as_finite_order() const;
  bool operator==(const StageOrder&) const = default;
};

// Whether code i is in the tree at stage s: (s restricted to |code_i|, code_i) in T.
bool code_in_tree(const DecidableTree& t, const Seq& s, int i);
// In-tree codes compare by Kleene-Brouwer; out-of-tree codes sit below in-tree
// ones; out-of-tree codes compare by index.
StageOrder order_family_step(const DecidableTree& t, const Seq& s);
// Two-parameter family: the one-parameter construction on the paired sequence.
StageOrder paired_order_step(const DecidableTree& t, const Seq& s, const Seq& u);

// Term i has the code seq_at(i + 1); throws InconsistentSigma on an invalid result.
Predilator dilator_family_step(const DecidableTree& t, const Seq& s);

// Elements <c(0), xi_0, ..., c(L-1), xi_{L-1}> of the truncated functorial tree at
// stage s applied to n, sorted by Kleene-Brouwer order.
std::vector<Seq> shoenfield_truncation(const DecidableTree& t, const Seq& s, int n);
CodedFunctor shoenfield_functor(const DecidableTree& t, const Seq& s);

enum class FamilyKind { order, dilator };
struct FamilyReport {
  int prefixes_checked = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};
// Checks carrier size, linearity, monotone restriction to every shorter prefix and,
// for dilator families, predilator validity. With an empty prefix list every
// sequence of length <= depth with entries < alphabet is checked. Closure of the
// tree is sampled on the same range.
FamilyReport family_check(const DecidableTree& t, FamilyKind kind, const std::vector<Seq>& prefixes,
                          int depth, int alphabet);

// e_k = number of j < k with sigma(j) < sigma(k); inverse of sigma_from_ecodes.
std::vector<int> ecodes_of_sigma(const std::vector<int>& sigma);

// Dec of the trie of (code, e-codes) pairs with digits < `digits` and length
// <= `max_length`. Children are ordered by digit, then e-code, with the terminal last.
struct CodeTrie {
  Dendrogram d;
  Predilator p;
  std::map<std::pair<Seq, Seq>, int> term_of;  // (code, e-codes) -> term of p
};
CodeTrie code_trie(int digits, int max_length);
// i -> term of (code of i, e-codes of its priority permutation); throws
// BoundExceeded when a code falls outside the trie.
TermMap code_trie_embedding(const CodeTrie& u, const Predilator& family_stage, const Seq& s);

}  // namespace dilator
