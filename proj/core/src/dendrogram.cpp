#include "dilator/dendrogram.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "dilator/error.hpp"

namespace dilator {

int Dendrogram::add_node(int parent, std::optional<int> ecode) {
  int id = size();
  if (parent >= id) throw InvalidDendrogram("parent must exist before its child");
  parent_.push_back(parent < 0 ? -1 : parent);
  ecode_.push_back(ecode);
  children_.emplace_back();
  if (parent < 0)
    roots_.push_back(id);
  else
    children_[parent].push_back(id);
  return id;
}

Dendrogram Dendrogram::from_arrays(const std::vector<int>& parent,
                                   const std::vector<std::optional<int>>& ecode,
                                   const std::vector<int>& rank) {
  int n = static_cast<int>(parent.size());
  if (static_cast<int>(ecode.size()) != n || static_cast<int>(rank.size()) != n)
    throw InvalidDendrogram("array sizes differ");
  Dendrogram d;
  d.parent_ = parent;
  d.ecode_ = ecode;
  d.children_.assign(n, {});
  for (int x = 0; x < n; ++x) {
    if (parent[x] >= n || parent[x] == x) throw InvalidDendrogram("bad parent of node " + std::to_string(x));
    if (parent[x] < 0) {
      d.parent_[x] = -1;
      d.roots_.push_back(x);
    } else {
      d.children_[parent[x]].push_back(x);
    }
  }
  auto by_rank = [&](int a, int b) { return rank[a] < rank[b] || (rank[a] == rank[b] && a < b); };
  std::sort(d.roots_.begin(), d.roots_.end(), by_rank);
  for (auto& c : d.children_) std::sort(c.begin(), c.end(), by_rank);
  // Reject cycles early: every node must reach a root.
  for (int x = 0; x < n; ++x) {
    int y = x;
    for (int steps = 0; y >= 0; ++steps) {
      if (steps > n) throw InvalidDendrogram("parent relation has a cycle");
      y = d.parent_[y];
    }
  }
  return d;
}

const std::vector<int>& Dendrogram::siblings(int x) const {
  int p = parent_.at(x);
  return p < 0 ? roots_ : children_[p];
}

int Dendrogram::sibling_rank(int x) const {
  const auto& s = siblings(x);
  return static_cast<int>(std::find(s.begin(), s.end(), x) - s.begin());
}

int Dendrogram::lh(int x) const {
  int l = 0;
  for (int y = parent_.at(x); y >= 0; y = parent_[y]) ++l;
  return l;
}

std::vector<int> Dendrogram::pred(int x) const {
  std::vector<int> p;
  for (int y = x; y >= 0; y = parent_[y]) p.push_back(y);
  std::reverse(p.begin(), p.end());
  return p;
}

std::vector<int> Dendrogram::terminals() const {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int x) {
    if (terminal(x)) out.push_back(x);
    for (int c : children_[x]) walk(c);
  };
  for (int r : roots_) walk(r);
  return out;
}

std::vector<int> Dendrogram::post_order() const {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int x) {
    for (int c : children_[x]) walk(c);
    out.push_back(x);
  };
  for (int r : roots_) walk(r);
  return out;
}

DendrogramReport validate_dendrogram(const Dendrogram& d) {
  DendrogramReport r;
  int n = d.size();
  for (int x = 0; x < n; ++x) {
    int y = x;
    for (int steps = 0; y >= 0 && steps <= n; ++steps) y = d.parent(y);
    if (y >= 0) {
      r.problems.push_back("node " + std::to_string(x) + " lies on a parent cycle");
      continue;
    }
    auto e = d.ecode(x);
    if (d.terminal(x) && e) r.problems.push_back("terminal node " + std::to_string(x) + " has an e-code");
    if (!d.terminal(x) && !e)
      r.problems.push_back("non-terminal node " + std::to_string(x) + " lacks an e-code");
    if (e && (*e < 0 || *e > d.lh(x)))
      r.problems.push_back("node " + std::to_string(x) + " has e-code " + std::to_string(*e) +
                           " above its length " + std::to_string(d.lh(x)));
  }
  return r;
}

bool is_trekkable(const Dendrogram& d) {
  for (int x = 0; x < d.size(); ++x) {
    if (d.parent(x) >= 0 && d.parent(x) >= x) return false;
    const auto& s = d.siblings(x);
    int k = d.sibling_rank(x);
    if (k > 0 && s[k - 1] >= x) return false;
  }
  return true;
}

namespace {

std::string form_of(const Dendrogram& d, int x) {
  if (d.terminal(x)) return "*";
  std::string s = "(e" + std::to_string(d.ecode(x).value_or(-1));
  for (int c : d.children(x)) s += " " + form_of(d, c);
  return s + ")";
}

}  // namespace

std::string canonical_form(const Dendrogram& d) {
  std::string s;
  for (int r : d.roots()) {
    if (!s.empty()) s += " ";
    s += form_of(d, r);
  }
  return s;
}

std::optional<std::vector<int>> dendrogram_isomorphism(const Dendrogram& a, const Dendrogram& b) {
  if (a.size() != b.size() || canonical_form(a) != canonical_form(b)) return std::nullopt;
  std::vector<int> f(a.size(), -1);
  std::function<void(int, int)> walk = [&](int x, int y) {
    f[x] = y;
    for (std::size_t i = 0; i < a.children(x).size(); ++i) walk(a.children(x)[i], b.children(y)[i]);
  };
  for (std::size_t i = 0; i < a.roots().size(); ++i) walk(a.roots()[i], b.roots()[i]);
  return f;
}

std::vector<int> sigma_from_ecodes(const std::vector<int>& ecodes) {
  std::vector<int> order;  // indices by increasing value
  for (int i = 0; i < static_cast<int>(ecodes.size()); ++i) {
    int e = ecodes[i];
    if (e < 0 || e > i) throw InvalidDendrogram("e-code " + std::to_string(e) + " at depth " + std::to_string(i));
    order.insert(order.begin() + e, i);
  }
  std::vector<int> sigma(ecodes.size());
  for (int pos = 0; pos < static_cast<int>(order.size()); ++pos) sigma[order[pos]] = pos;
  return sigma;
}

std::vector<int> ancestor_ecodes(const Dendrogram& d, int x) {
  auto p = d.pred(x);
  std::vector<int> e;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) e.push_back(d.ecode(p[i]).value_or(0));
  return e;
}

namespace {

Decoded decode_nodes(const Dendrogram& c, const std::vector<int>& nodes) {
  Decoded out;
  std::vector<std::vector<int>> paths;
  for (int x : nodes) {
    out.p.add_term({"n" + std::to_string(x), c.lh(x), sigma_from_ecodes(ancestor_ecodes(c, x))});
    out.node.push_back(x);
    paths.push_back(c.pred(x));
  }
  int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& a = paths[i];
      const auto& b = paths[j];
      int m = 0;
      while (m < static_cast<int>(std::min(a.size(), b.size())) && a[m] == b[m]) ++m;
      m = std::min({m, c.lh(nodes[i]), c.lh(nodes[j])});
      out.p.set_dist(i, j, m);
    }
  return out;
}

}  // namespace

Decoded dec_with_nodes(const Dendrogram& c) {
  auto r = validate_dendrogram(c);
  if (!r.ok()) throw InvalidDendrogram(r.problems.front());
  return decode_nodes(c, c.terminals());
}

Predilator dec(const Dendrogram& c) { return dec_with_nodes(c).p; }

Decoded dec_bullet_with_nodes(const Dendrogram& d) {
  auto r = validate_dendrogram(d);
  if (!r.ok()) throw InvalidDendrogram(r.problems.front());
  return decode_nodes(d, d.post_order());
}

Predilator dec_bullet(const Dendrogram& d) { return dec_bullet_with_nodes(d).p; }

Cells cell_with_classes(const Predilator& p) {
  Cells out;
  int n = p.size();
  int top = 0;
  for (int t = 0; t < n; ++t) top = std::max(top, p.arity(t));
  // node_at[m][t] = node holding t at level m
  std::vector<std::vector<int>> node_at(top + 1, std::vector<int>(n, -1));
  for (int m = 0; m <= top; ++m) {
    int current = -1;
    int last = -1;
    for (int t = 0; t < n; ++t) {
      if (p.arity(t) < m) continue;
      bool same = last >= 0 && p.dist(last, t) > m;
      if (!same) {
        int parent = m == 0 ? -1 : node_at[m - 1][t];
        std::optional<int> e;
        if (m < p.arity(t)) {
          const auto& s = p.sigma(t);
          int rank = 0;
          for (int j = 0; j < m; ++j) rank += s[j] < s[m];
          e = rank;
        }
        current = out.d.add_node(parent, e);
        out.level.push_back(m);
        out.members.emplace_back();
      }
      node_at[m][t] = current;
      out.members[current].push_back(t);
      last = t;
    }
  }
  return out;
}

Dendrogram cell(const Predilator& p) { return cell_with_classes(p).d; }

Bulleted bullet_with_origin(const Dendrogram& d) {
  Bulleted out;
  std::function<void(int, int)> emit = [&](int x, int parent) {
    if (!d.terminal(x)) {
      int y = out.d.add_node(parent, d.ecode(x));
      out.origin.push_back(x);
      out.bulleted.push_back(0);
      for (int c : d.children(x)) emit(c, y);
    }
    out.d.add_node(parent, std::nullopt);
    out.origin.push_back(x);
    out.bulleted.push_back(1);
  };
  for (int r : d.roots()) emit(r, -1);
  return out;
}

Dendrogram bullet(const Dendrogram& d) { return bullet_with_origin(d).d; }

namespace {

std::vector<KbItem> interleave(const Dendrogram& c, const DendroElement& x) {
  auto p = c.pred(x.node);
  std::vector<KbItem> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.push_back({0, p[i]});
    if (i < x.xi.size()) out.push_back({1, x.xi[i]});
  }
  return out;
}

}  // namespace

std::strong_ordering compare_dendro(const Dendrogram& c, const DendroElement& x,
                                    const DendroElement& y) {
  // Nodes meet the comparator only at the first difference, where they are siblings.
  SlotComparator nodes = [&c](int a, int b) {
    if (a == b) return std::strong_ordering::equal;
    return c.sibling_rank(a) <=> c.sibling_rank(b);
  };
  SlotComparator values = [](int a, int b) { return a <=> b; };
  std::vector<SlotComparator> cmp{nodes, values};
  auto a = interleave(c, x);
  auto b = interleave(c, y);
  return kb_compare(a, b, cmp);
}

std::vector<DendroElement> apply_dendrogram(const Dendrogram& c, int n, bool intermediate) {
  auto r = validate_dendrogram(c);
  if (!r.ok()) throw InvalidDendrogram(r.problems.front());
  std::vector<DendroElement> out;
  for (int x = 0; x < c.size(); ++x) {
    if (!intermediate && !c.terminal(x)) continue;
    int m = c.lh(x);
    if (m > n) continue;
    auto sigma = sigma_from_ecodes(ancestor_ecodes(c, x));
    std::vector<int> a(m);
    std::iota(a.begin(), a.end(), 0);
    while (true) {
      DendroElement e{x, std::vector<int>(m)};
      for (int i = 0; i < m; ++i) e.xi[i] = a[sigma[i]];
      out.push_back(std::move(e));
      int i = m - 1;
      while (i >= 0 && a[i] == n - m + i) --i;
      if (i < 0) break;
      ++a[i];
      for (int j = i + 1; j < m; ++j) a[j] = a[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end(), [&](const DendroElement& x, const DendroElement& y) {
    return compare_dendro(c, x, y) < 0;
  });
  return out;
}

AppliedElement to_applied(const Decoded& dd, const DendroElement& x) {
  int t = static_cast<int>(std::find(dd.node.begin(), dd.node.end(), x.node) - dd.node.begin());
  if (t == static_cast<int>(dd.node.size())) throw InvalidDendrogram("node has no decoded term");
  AppliedElement a{t, x.xi};
  std::sort(a.args.begin(), a.args.end());
  return a;
}

DendroElement from_applied(const Dendrogram& c, const Decoded& dd, const AppliedElement& x) {
  DendroElement e{dd.node.at(x.term), {}};
  auto sigma = sigma_from_ecodes(ancestor_ecodes(c, e.node));
  for (std::size_t i = 0; i < sigma.size(); ++i) e.xi.push_back(x.args.at(sigma[i]));
  return e;
}

LvOrder::LvOrder(const Dendrogram& d) : d_(d), bullet_(dec_bullet_with_nodes(d)), term_of_(d.size(), -1) {
  for (int t = 0; t < static_cast<int>(bullet_.node.size()); ++t) term_of_[bullet_.node[t]] = t;
}

bool LvOrder::less(int x, int y) const {
  int lx = d_.lh(x), ly = d_.lh(y);
  if (lx != ly) return lx < ly;
  std::vector<int> full(lx);
  std::iota(full.begin(), full.end(), 0);
  return compare_applied(bullet_.p, {term_of_[x], full}, {term_of_[y], full}) < 0;
}

std::vector<int> lv_order(const Dendrogram& d) {
  LvOrder lv(d);
  std::vector<int> nodes(d.size());
  std::iota(nodes.begin(), nodes.end(), 0);
  std::sort(nodes.begin(), nodes.end(), [&](int a, int b) { return lv.less(a, b); });
  return nodes;
}

int inversions(const Dendrogram& d) {
  LvOrder lv(d);
  int count = 0;
  for (int s = 0; s < d.size(); ++s)
    for (int t = s + 1; t < d.size(); ++t) count += lv.less(t, s);
  return count;
}

Dendrogram swap_labels(const Dendrogram& d, int m) {
  int n = d.size();
  if (m < 0 || m + 1 >= n) throw InvalidDendrogram("swap index out of range");
  auto relabel = [m](int x) { return x == m ? m + 1 : x == m + 1 ? m : x; };
  std::vector<int> parent(n);
  std::vector<std::optional<int>> ecode(n);
  std::vector<int> rank(n);
  for (int x = 0; x < n; ++x) {
    int y = relabel(x);
    parent[y] = d.parent(x) < 0 ? -1 : relabel(d.parent(x));
    ecode[y] = d.ecode(x);
    rank[y] = d.sibling_rank(x);
  }
  return Dendrogram::from_arrays(parent, ecode, rank);
}

std::pair<Dendrogram, SwapTrace> lv_sort(const Dendrogram& d, SwapPolicy policy) {
  if (!is_trekkable(d)) throw NotTrekkable("node labels do not respect parent and sibling order");
  SwapTrace trace;
  Dendrogram cur = d;
  trace.inversions.push_back(inversions(cur));
  trace.stages.push_back(cur);
  auto record = [&](int m) {
    cur = swap_labels(cur, m);
    trace.swaps.push_back(m);
    trace.inversions.push_back(inversions(cur));
    trace.stages.push_back(cur);
  };
  if (policy == SwapPolicy::least_first) {
    while (true) {
      LvOrder lv(cur);
      int found = -1;
      for (int m = 0; m + 1 < cur.size() && found < 0; ++m)
        if (lv.less(m + 1, m)) found = m;
      if (found < 0) break;
      record(found);
    }
  } else {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int m = 0; m + 1 < cur.size(); ++m) {
        if (LvOrder(cur).less(m + 1, m)) {
          record(m);
          changed = true;
        }
      }
    }
  }
  return {cur, trace};
}

bool dendrogram_is_flower(const Dendrogram& d) {
  bool all_flat = true;
  for (int x = 0; x < d.size(); ++x) all_flat = all_flat && d.lh(x) == 0;
  if (all_flat) return true;
  for (int star : d.roots()) {
    bool ok = true;
    for (int x = 0; x < d.size() && ok; ++x) {
      if (x == star) continue;
      int l = d.lh(x);
      if (l == 0) {
        ok = d.sibling_rank(x) < d.sibling_rank(star);
      } else {
        auto p = d.pred(x);
        auto e = d.ecode(x);
        ok = p.front() == star && (!e || *e < l);
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace dilator
