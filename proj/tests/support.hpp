#pragma once

// Independent brute-force oracles shared by the unit tests and the acceptance runner.

#include <algorithm>
#include <compare>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "dilator/dendrogram.hpp"
#include "dilator/order.hpp"
#include "dilator/predilator.hpp"

namespace oracle {

using dilator::Seq;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Plain Kleene-Brouwer comparison, written out case by case.
inline int kb(const Seq& a, const Seq& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  if (a.size() == b.size()) return 0;
  return a.size() > b.size() ? -1 : 1;
}

// All k-subsets of 0..n-1, increasing.
inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

// (n_join, e0, e1) of the inclusion diagram of a, b: positions inside a ∪ b.
struct RawDiagram {
  int n_join;
  std::vector<int> e0, e1;
  auto operator<=>(const RawDiagram&) const = default;
};

inline RawDiagram raw_diagram(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> u;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
  RawDiagram r{static_cast<int>(u.size()), {}, {}};
  for (int v : a) r.e0.push_back(static_cast<int>(std::find(u.begin(), u.end(), v) - u.begin()));
  for (int v : b) r.e1.push_back(static_cast<int>(std::find(u.begin(), u.end(), v) - u.begin()));
  return r;
}

// Every diagram realized by subsets of sizes n0, n1 in carriers of size <= n0 + n1.
inline std::set<RawDiagram> realized_diagrams(int n0, int n1) {
  std::set<RawDiagram> out;
  for (int n = std::max(n0, n1); n <= n0 + n1; ++n)
    for (const auto& a : subsets(n, n0))
      for (const auto& b : subsets(n, n1)) out.insert(raw_diagram(a, b));
  return out;
}

// Comparison of t(a) in the abstract form, read off the data without the library.
inline int compare_terms(const dilator::Predilator& p, int s, const std::vector<int>& a, int t,
                         const std::vector<int>& b) {
  for (int j = 0; j < p.dist(s, t); ++j) {
    int x = a[p.sigma(s)[j]], y = b[p.sigma(t)[j]];
    if (x != y) return x < y ? -1 : 1;
  }
  return s == t ? 0 : (s < t ? -1 : 1);
}

// Exhaustive relation check: p and q agree on every diagram under f.
inline bool relations_agree(const dilator::Predilator& p, const dilator::Predilator& q,
                            const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != p.size()) return false;
  for (int s = 0; s < p.size(); ++s)
    if (f[s] < 0 || f[s] >= q.size() || p.arity(s) != q.arity(f[s])) return false;
  for (int s = 0; s < p.size(); ++s)
    for (int t = 0; t < p.size(); ++t) {
      int k0 = p.arity(s), k1 = p.arity(t);
      for (int n = std::max(k0, k1); n <= k0 + k1; ++n)
        for (const auto& a : subsets(n, k0))
          for (const auto& b : subsets(n, k1))
            if (compare_terms(p, s, a, t, b) != compare_terms(q, f[s], a, f[t], b)) return false;
    }
  return true;
}

// Isomorphism of predilators with explicit check in both directions.
inline bool iso_both_ways(const dilator::Predilator& p, const dilator::Predilator& q) {
  if (p.size() != q.size()) return false;
  auto f = dilator::search_isomorphism(p, q);
  if (!f) return false;
  std::vector<int> inv(f->size());
  for (std::size_t i = 0; i < f->size(); ++i) inv[(*f)[i]] = static_cast<int>(i);
  return relations_agree(p, q, *f) && relations_agree(q, p, inv);
}

// Same abstract data term by term (names ignored): an isomorphism by definition of
// the abstract form, usable above the diagram bound.
inline bool same_abstract_form(const dilator::Predilator& p, const dilator::Predilator& q) {
  if (p.size() != q.size()) return false;
  for (int s = 0; s < p.size(); ++s) {
    if (p.arity(s) != q.arity(s) || p.sigma(s) != q.sigma(s)) return false;
    for (int t = 0; t < p.size(); ++t)
      if (p.dist(s, t) != q.dist(s, t)) return false;
  }
  return true;
}

inline int max_arity(const dilator::Predilator& p) {
  int m = 0;
  for (int t = 0; t < p.size(); ++t) m = std::max(m, p.arity(t));
  return m;
}

// Elements of P(n) sorted by the oracle comparison.
inline std::vector<dilator::AppliedElement> applied(const dilator::Predilator& p, int n) {
  std::vector<dilator::AppliedElement> out;
  for (int t = 0; t < p.size(); ++t)
    if (p.arity(t) <= n)
      for (const auto& a : subsets(n, p.arity(t))) out.push_back({t, a});
  std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
    return compare_terms(p, x.term, x.args, y.term, y.args) < 0;
  });
  return out;
}

// The sorting-lemma figure: children of 0 are 1, 3, 5; all e-codes 0.
inline dilator::Dendrogram sorting_figure() {
  std::vector<int> parent{-1, 0, 1, 0, 1, 0, 5, 3, 5};
  std::vector<std::optional<int>> e{0, 0, std::nullopt, 0, std::nullopt, 0, std::nullopt, std::nullopt, std::nullopt};
  std::vector<int> rank{0, 1, 2, 3, 4, 5, 6, 7, 8};
  return dilator::Dendrogram::from_arrays(parent, e, rank);
}

// The bullet-closure figure: root[a[b[c]] d e[f]].
inline dilator::Dendrogram bullet_figure() {
  dilator::Dendrogram d;
  int r = d.add_node(-1, 0);
  int a = d.add_node(r, 0);
  int b = d.add_node(a, 0);
  d.add_node(b, std::nullopt);
  d.add_node(r, std::nullopt);
  int e = d.add_node(r, 0);
  d.add_node(e, std::nullopt);
  return d;
}

struct Mutant {
  std::string label;
  dilator::Predilator p;
  dilator::Clause clause;
};

// a(2) < b(2) < c(1) with dist(a,b)=2, dist(b,c)=dist(a,c)=1; each mutant breaks one clause.
inline dilator::Predilator mutant_base() {
  dilator::Predilator p;
  p.add_term({"a", 2, {0, 1}});
  p.add_term({"b", 2, {0, 1}});
  p.add_term({"c", 1, {0}});
  p.set_dist(0, 1, 2);
  p.set_dist(1, 2, 1);
  p.set_dist(0, 2, 1);
  return p;
}

inline std::vector<Mutant> curated_mutants() {
  using dilator::Clause;
  std::vector<Mutant> out;
  auto add = [&](std::string label, Clause c, auto edit) {
    auto p = mutant_base();
    edit(p);
    out.push_back({std::move(label), std::move(p), c});
  };
  add("short sigma", Clause::sigma_length, [](auto& p) { p.mutable_term(0).sigma = {0}; });
  add("repeated sigma entry", Clause::sigma_permutation,
      [](auto& p) { p.mutable_term(0).sigma = {0, 0}; });
  add("self distance below arity", Clause::self_distance,
      [](auto& p) { p.set_dist_entry(2, 2, 0); });
  add("one-sided distance", Clause::symmetry, [](auto& p) { p.set_dist_entry(2, 0, 0); });
  add("distance above arity", Clause::distance_bound, [](auto& p) { p.set_dist(0, 1, 3); });
  add("negative distance", Clause::distance_bound, [](auto& p) {
    p = dilator::Predilator();
    p.add_term({"x", 1, {0}});
    p.add_term({"y", 1, {0}});
    p.set_dist(0, 1, -1);
  });
  add("outer distance too small", Clause::ultrametric, [](auto& p) { p.set_dist(0, 2, 0); });
  add("inner distance too small", Clause::ultrametric, [](auto& p) { p.set_dist(1, 2, 0); });
  add("reversed priority below distance", Clause::sigma_compatibility,
      [](auto& p) { p.mutable_term(1).sigma = {1, 0}; });
  add("duplicate name", Clause::duplicate_name, [](auto& p) { p.mutable_term(1).name = "a"; });
  return out;
}

}  // namespace oracle
