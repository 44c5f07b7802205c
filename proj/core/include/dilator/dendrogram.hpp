#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dilator/predilator.hpp"

namespace dilator {

// Finite forest with ordered children, ordered roots and e-codes on non-terminals.
// Terminal = leaf. Node ids are 0..size()-1.
class Dendrogram {
public:
  Dendrogram() = default;

  // Appends a node as the last child of `parent` (or last root when parent < 0).
  int add_node(int parent, std::optional<int> ecode);
  // Builds from parallel arrays; children and roots are ordered by `rank` (ascending).
  static Dendrogram from_arrays(const std::vector<int>& parent,
                                const std::vector<std::optional<int>>& ecode,
                                const std::vector<int>& rank);

  int size() const { return static_cast<int>(parent_.size()); }
  int parent(int x) const { return parent_.at(x); }
  const std::vector<int>& children(int x) const { return children_.at(x); }
  const std::vector<int>& roots() const { return roots_; }
  const std::vector<int>& siblings(int x) const;  // the ordered sibling set containing x
  int sibling_rank(int x) const;
  std::optional<int> ecode(int x) const { return ecode_.at(x); }
  bool terminal(int x) const { return children_.at(x).empty(); }
  int lh(int x) const;
  std::vector<int> pred(int x) const;  // root .. x
  std::vector<int> terminals() const;  // left-to-right
  std::vector<int> post_order() const; // descendants before a node, siblings in order

  void set_ecode(int x, std::optional<int> e) { ecode_.at(x) = e; }

  bool operator==(const Dendrogram&) const = default;

private:
  std::vector<int> parent_;
  std::vector<std::optional<int>> ecode_;
  std::vector<std::vector<int>> children_;
  std::vector<int> roots_;
};

struct DendrogramReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};
DendrogramReport validate_dendrogram(const Dendrogram& d);
bool is_trekkable(const Dendrogram& d);

// Canonical s-expression form; equal forms <=> isomorphic.
std::string canonical_form(const Dendrogram& d);
std::optional<std::vector<int>> dendrogram_isomorphism(const Dendrogram& a, const Dendrogram& b);

// Priority permutation induced by the e-codes of a node's strict ancestors.
std::vector<int> sigma_from_ecodes(const std::vector<int>& ecodes);
// e-codes of the strict ancestors of x, root first.
std::vector<int> ancestor_ecodes(const Dendrogram& d, int x);

struct Decoded {
  Predilator p;
  std::vector<int> node;  // node[term] = dendrogram node
};
Decoded dec_with_nodes(const Dendrogram& c);
Predilator dec(const Dendrogram& c);
Decoded dec_bullet_with_nodes(const Dendrogram& d);
Predilator dec_bullet(const Dendrogram& d);

struct Cells {
  Dendrogram d;
  std::vector<int> level;           // m of each node
  std::vector<std::vector<int>> members;  // term positions of each class
};
Cells cell_with_classes(const Predilator& p);
Dendrogram cell(const Predilator& p);

struct Bulleted {
  Dendrogram d;
  std::vector<int> origin;     // node of the input
  std::vector<char> bulleted;  // 1 for x•
};
Bulleted bullet_with_origin(const Dendrogram& d);
Dendrogram bullet(const Dendrogram& d);

// <x0, xi0, x1, ..., xi_{m-1}, x_m>
struct DendroElement {
  int node = 0;
  std::vector<int> xi;
  bool operator==(const DendroElement&) const = default;
};
std::vector<DendroElement> apply_dendrogram(const Dendrogram& c, int n, bool intermediate);
std::strong_ordering compare_dendro(const Dendrogram& c, const DendroElement& x,
                                    const DendroElement& y);
// Sorted parameters as the argument tuple of the matching decoded term.
AppliedElement to_applied(const Decoded& dd, const DendroElement& x);
DendroElement from_applied(const Dendrogram& c, const Decoded& dd, const AppliedElement& x);

// Level-then-value order; `less(x,y)`.
class LvOrder {
public:
  explicit LvOrder(const Dendrogram& d);
  bool less(int x, int y) const;

private:
  Dendrogram d_;
  Decoded bullet_;
  std::vector<int> term_of_;
};
std::vector<int> lv_order(const Dendrogram& d);
int inversions(const Dendrogram& d);

enum class SwapPolicy { least_first, pass };
struct SwapTrace {
  std::vector<int> swaps;       // m for each adjacent swap (m, m+1)
  std::vector<int> inversions;  // before the first swap and after each swap
  std::vector<Dendrogram> stages;
};
// Relabels m <-> m+1.
Dendrogram swap_labels(const Dendrogram& d, int m);
std::pair<Dendrogram, SwapTrace> lv_sort(const Dendrogram& d,
                                         SwapPolicy policy = SwapPolicy::least_first);

bool dendrogram_is_flower(const Dendrogram& d);

}  // namespace dilator
