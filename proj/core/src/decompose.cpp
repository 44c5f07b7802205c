#include "dilator/decompose.hpp"

#include <algorithm>
#include <numeric>

#include "dilator/error.hpp"

namespace dilator {

char to_char(StepType t) {
  switch (t) {
    case StepType::A: return 'A';
    case StepType::B: return 'B';
    case StepType::C: return 'C';
    case StepType::D: return 'D';
  }
  return '?';
}

namespace {

bool same_parent(const Dendrogram& d, int u, int v) { return d.parent(u) == d.parent(v); }

bool prefix_of(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool equal_below(const std::vector<int>& a, const std::vector<int>& b, std::size_t k) {
  return a.size() >= k && b.size() >= k && std::equal(a.begin(), a.begin() + k, b.begin());
}

}  // namespace

std::optional<StepKind> classify_step(const Dendrogram& d, const DendroElement& lower,
                                      const DendroElement& upper) {
  int u = lower.node, v = upper.node;
  int lu = d.lh(u), lv = d.lh(v);
  const auto& a = lower.xi;
  const auto& b = upper.xi;
  if (d.parent(u) == v && prefix_of(b, a)) return StepKind{StepType::A, true};
  if (u != v && same_parent(d, u, v) && d.sibling_rank(u) < d.sibling_rank(v) && a == b)
    return StepKind{StepType::B, true};
  if (lu == lv && lu >= 1 && (u == v || same_parent(d, u, v)) &&
      equal_below(a, b, lu - 1) && a[lu - 1] < b[lu - 1])
    return StepKind{StepType::C, true};
  if (lv == lu + 1) {
    int pv = d.parent(v);
    if (pv != u && same_parent(d, u, pv) && d.sibling_rank(u) < d.sibling_rank(pv) &&
        prefix_of(a, b))
      return StepKind{StepType::D, true};
    if (pv == u && lu >= 1 && equal_below(a, b, lu - 1) && a[lu - 1] < b[lu - 1])
      return StepKind{StepType::D, false};
  }
  return std::nullopt;
}

namespace {

struct Builder {
  const Dendrogram& d;
  ElementaryChain chain;

  void push(DendroElement z) {
    if (!chain.elements.empty()) {
      auto k = classify_step(d, chain.elements.back(), z);
      if (!k) throw InvalidDendrogram("decomposition produced a non-elementary step");
      chain.steps.push_back(*k);
    }
    chain.elements.push_back(std::move(z));
  }

  // A steps from the current element up to its ancestor at length `level`.
  void climb(int level) {
    DendroElement z = chain.elements.back();
    while (d.lh(z.node) > level) {
      z.node = d.parent(z.node);
      z.xi.pop_back();
      push(z);
    }
  }

  // Lowered elements t_k(b_0, ..., b_{k-2}, b_{k-1} - 1) for k = from..lh t - 1, then t(b).
  void descend(const std::vector<int>& path, const std::vector<int>& b, int from) {
    int lt = static_cast<int>(b.size());
    for (int k = from; k < lt; ++k) {
      DendroElement e{path[k], std::vector<int>(b.begin(), b.begin() + k)};
      e.xi.back() -= 1;
      push(e);
    }
    push({path[lt], b});
  }
};

// xi must list lh(node) distinct values ordered as the node's e-codes prescribe.
void check_element(const Dendrogram& d, const DendroElement& e) {
  if (e.node < 0 || e.node >= d.size()) throw InvalidDendrogram("node " + std::to_string(e.node) + " out of range");
  if (static_cast<int>(e.xi.size()) != d.lh(e.node))
    throw ArityMismatch("node " + std::to_string(e.node) + " takes " + std::to_string(d.lh(e.node)) + " parameters");
  std::vector<int> sorted = e.xi;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || (!sorted.empty() && sorted[0] < 0))
    throw InconsistentSigma("parameters must be distinct naturals");
  auto sigma = sigma_from_ecodes(ancestor_ecodes(d, e.node));
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (e.xi[i] != sorted[sigma[i]]) throw InconsistentSigma("parameters disagree with the e-codes of node " + std::to_string(e.node));
}

}  // namespace

ElementaryChain elementary_decompose(const Dendrogram& d, const DendroElement& x,
                                     const DendroElement& y) {
  check_element(d, x);
  check_element(d, y);
  if (compare_dendro(d, x, y) >= 0) throw NotLess("first element is not below the second");
  int top = 0;
  for (int v : x.xi) top = std::max(top, v + 1);
  for (int v : y.xi) top = std::max(top, v + 1);
  auto pad = [](DendroElement e) {
    for (int& v : e.xi) v = 2 * v + 2;
    return e;
  };
  DendroElement s = pad(x), t = pad(y);
  Builder b{d, {}};
  b.chain.carrier = 2 * top + 3;

  auto ps = d.pred(s.node), pt = d.pred(t.node);
  int ls = static_cast<int>(s.xi.size()), lt = static_cast<int>(t.xi.size());
  b.push(s);
  // First difference of the interleaved sequences.
  int q = 0;
  bool node_diff = false, param_diff = false;
  for (; q <= std::min(ls, lt); ++q) {
    if (ps[q] != pt[q]) {
      node_diff = true;
      break;
    }
    if (q < ls && q < lt && s.xi[q] != t.xi[q]) {
      param_diff = true;
      break;
    }
    if (q == ls || q == lt) break;
  }
  if (!node_diff && !param_diff) {
    // t is an ancestor of s with matching parameters.
    b.climb(lt);
  } else if (node_diff) {
    b.climb(q);
    if (lt == q) {
      b.push(t);
    } else {
      // Literal D into t_{q+1}; lowered unless that is t itself.
      b.descend(pt, t.xi, q + 1);
    }
  } else {
    b.climb(q + 1);
    if (lt == q + 1) {
      b.push(t);
    } else {
      b.descend(pt, t.xi, q + 1);
    }
  }
  return b.chain;
}

ElementaryChain elementary_decompose(const Dendrogram& d, const AppliedElement& x,
                                     const AppliedElement& y) {
  auto dd = dec_bullet_with_nodes(d);
  if (x.term >= dd.p.size() || y.term >= dd.p.size())
    throw InvalidPredilator("term outside Dec-bullet");
  return elementary_decompose(d, from_applied(d, dd, x), from_applied(d, dd, y));
}

bool verify_chain(const Dendrogram& d, const ElementaryChain& c) {
  if (c.elements.empty() || c.steps.size() + 1 != c.elements.size()) return false;
  auto dd = dec_bullet_with_nodes(d);
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& lo = c.elements[i];
    const auto& hi = c.elements[i + 1];
    for (const auto* e : {&lo, &hi})
      for (int v : e->xi)
        if (v < 0 || v >= c.carrier) return false;
    auto k = classify_step(d, lo, hi);
    if (!k || *k != c.steps[i]) return false;
    if (compare_applied(dd.p, to_applied(dd, lo), to_applied(dd, hi)) >= 0) return false;
    if (compare_dendro(d, lo, hi) >= 0) return false;
  }
  return true;
}

std::vector<ElementaryInstance> elementary_instances(const Dendrogram& d) {
  int top = 0;
  for (int x = 0; x < d.size(); ++x) top = std::max(top, d.lh(x));
  auto elems = apply_dendrogram(d, 2 * top, true);
  std::vector<ElementaryInstance> out;
  for (const auto& lo : elems)
    for (const auto& hi : elems)
      if (auto k = classify_step(d, lo, hi)) out.push_back({lo, hi, *k});
  return out;
}

std::vector<ParentComparisonFailure> parent_comparison_failures(const Dendrogram& d) {
  auto dd = dec_bullet_with_nodes(d);
  std::vector<int> term_of(d.size());
  for (int t = 0; t < dd.p.size(); ++t) term_of[dd.node[t]] = t;
  std::vector<ParentComparisonFailure> out;
  for (int x = 0; x < d.size(); ++x)
    for (int y = 0; y < d.size(); ++y) {
      int m = d.lh(x);
      if (x == y || m == 0 || d.lh(y) != m) continue;
      std::vector<int> full(m);
      std::iota(full.begin(), full.end(), 0);
      if (compare_applied(dd.p, {term_of[x], full}, {term_of[y], full}) >= 0) continue;
      int px = d.parent(x);
      if (d.parent(y) == px && d.sibling_rank(x) < d.sibling_rank(y)) continue;
      std::vector<int> rest;
      int e = d.ecode(px).value_or(0);
      for (int v : full)
        if (v != e) rest.push_back(v);
      if (compare_applied(dd.p, {term_of[px], rest}, {term_of[y], full}) < 0) continue;
      out.push_back({x, y});
    }
  return out;
}

}  // namespace dilator
