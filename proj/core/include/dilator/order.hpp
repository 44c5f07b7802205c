#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dilator {

using Seq = std::vector<int>;

// A finite linear order over opaque string labels; position = rank.
class FiniteOrder {
public:
  FiniteOrder() = default;
  explicit FiniteOrder(std::vector<std::string> labels);
  static FiniteOrder of_size(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int rank) const { return labels_.at(rank); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool contains(const std::string& label) const { return rank_.count(label) != 0; }
  int rank(const std::string& label) const;  // throws LabelNotInCarrier

  bool operator==(const FiniteOrder& o) const { return labels_ == o.labels_; }

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> rank_;
};

struct IncreasingMap {
  int source = 0;
  int target = 0;
  std::vector<int> values;

  static IncreasingMap identity(int n);
  static IncreasingMap of(std::vector<int> values, int target);
  bool valid() const;
  int operator()(int i) const { return values.at(i); }
  // (*this) after `first`: i -> this(first(i))
  IncreasingMap after(const IncreasingMap& first) const;
  bool operator==(const IncreasingMap&) const = default;
};

// Two increasing maps e0: n0 -> n_join, e1: n1 -> n_join with covering ranges,
// plus the pullback legs n_meet -> n0, n_meet -> n1.
struct ArityDiagram {
  int n_meet = 0, n0 = 0, n1 = 0, n_join = 0;
  IncreasingMap e0, e1, leg0, leg1;

  bool trivial() const;
  ArityDiagram swapped() const;
  bool well_formed() const;
  // Realization a = ran e0, b = ran e1 in carrier n_join.
  const std::vector<int>& left() const { return e0.values; }
  const std::vector<int>& right() const { return e1.values; }
  bool operator==(const ArityDiagram&) const = default;
};

// Diagram of two strictly increasing subsets of the naturals, re-canonicalized
// into the carrier a ∪ b.
ArityDiagram diagram_of(const std::vector<int>& a, const std::vector<int>& b);

ArityDiagram diag(const FiniteOrder& x, const std::vector<std::string>& a,
                  const std::vector<std::string>& b);
// Pairwise diagrams; result[i][j] = diag(x, subsets[i], subsets[j]).
std::vector<std::vector<ArityDiagram>> diag(const FiniteOrder& x,
                                            const std::vector<std::vector<std::string>>& subsets);

inline constexpr int kDefaultDiagramBound = 6;

// All diagrams with arities (n0, n1). Cached; the reference stays valid.
const std::vector<ArityDiagram>& enum_arity_diagrams(int n0, int n1,
                                                     int bound = kDefaultDiagramBound);

struct KbItem {
  int slot = 0;
  int value = 0;
  bool operator==(const KbItem&) const = default;
};
using SlotComparator = std::function<std::strong_ordering(int, int)>;

// Kleene-Brouwer: a proper extension is smaller, else the first difference decides.
std::strong_ordering kb_compare(std::span<const KbItem> a, std::span<const KbItem> b,
                                std::span<const SlotComparator> comparators);
std::strong_ordering kb_compare(const Seq& a, const Seq& b);

// Enumeration of finite sequences in blocks: block n holds the sequences of
// length <= n with entries < n that are not in an earlier block, by length then lex.
Seq seq_at(std::uint64_t i);
std::uint64_t seq_index(const Seq& s);

bool is_prefix(const Seq& a, const Seq& b);  // a ⊆ b
std::string to_string(const Seq& s);

}  // namespace dilator
