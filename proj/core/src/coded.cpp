#include <algorithm>
#include <map>
#include <numeric>

#include "dilator/error.hpp"
#include "dilator/predilator.hpp"

namespace dilator {

CodedFunctor as_coded(const Predilator& p) {
  CodedFunctor f;
  f.order_at = [p](int n) {
    std::vector<CodedElement> out;
    for (const auto& e : apply_order(p, n)) {
      CodedElement c{e.term};
      c.insert(c.end(), e.args.begin(), e.args.end());
      out.push_back(std::move(c));
    }
    return out;
  };
  f.map_at = [](const IncreasingMap& g, const CodedElement& c) {
    CodedElement out{c.at(0)};
    for (std::size_t i = 1; i < c.size(); ++i) out.push_back(g(c[i]));
    return out;
  };
  f.supp_at = [](int, const CodedElement& c) { return std::vector<int>(c.begin() + 1, c.end()); };
  return f;
}

CodedFunctor double_functor() {
  CodedFunctor f;
  f.order_at = [](int n) {
    std::vector<CodedElement> out;
    for (int side = 0; side < 2; ++side)
      for (int x = 0; x < n; ++x) out.push_back({side, x});
    return out;
  };
  f.map_at = [](const IncreasingMap& g, const CodedElement& c) {
    return CodedElement{c.at(0), g(c.at(1))};
  };
  f.supp_at = [](int, const CodedElement& c) { return std::vector<int>{c.at(1)}; };
  return f;
}

CodedFunctor identity_functor() {
  CodedFunctor f;
  f.order_at = [](int n) {
    std::vector<CodedElement> out;
    for (int x = 0; x < n; ++x) out.push_back({x});
    return out;
  };
  f.map_at = [](const IncreasingMap& g, const CodedElement& c) { return CodedElement{g(c.at(0))}; };
  f.supp_at = [](int, const CodedElement& c) { return std::vector<int>{c.at(0)}; };
  return f;
}

namespace {

struct TraceTerm {
  int arity;
  CodedElement code;  // element of F(arity) with full support
};

class Window {
public:
  explicit Window(const CodedFunctor& f) : f_(f) {}

  // Position of an element in F(n); throws SupportViolation when absent.
  int position(int n, const CodedElement& e) {
    auto& idx = index(n);
    auto it = idx.find(e);
    if (it == idx.end()) throw SupportViolation("F(f) leaves F(" + std::to_string(n) + ")");
    return it->second;
  }
  const std::vector<CodedElement>& elements(int n) {
    index(n);
    return elems_[n];
  }
  CodedElement realize(const TraceTerm& t, const IncreasingMap& e) { return f_.map_at(e, t.code); }

  // Verdict of F on s(ran e0) vs t(ran e1) in F(n_join).
  std::strong_ordering verdict(const TraceTerm& s, const TraceTerm& t, const ArityDiagram& d) {
    int a = position(d.n_join, realize(s, d.e0));
    int b = position(d.n_join, realize(t, d.e1));
    return a <=> b;
  }

private:
  std::map<CodedElement, int>& index(int n) {
    auto it = index_.find(n);
    if (it != index_.end()) return it->second;
    auto elems = f_.order_at(n);
    std::map<CodedElement, int> idx;
    for (int i = 0; i < static_cast<int>(elems.size()); ++i)
      if (!idx.emplace(elems[i], i).second)
        throw NoConsistentFit("F(" + std::to_string(n) + ") lists an element twice");
    elems_[n] = std::move(elems);
    return index_.emplace(n, std::move(idx)).first->second;
  }

  const CodedFunctor& f_;
  std::map<int, std::map<CodedElement, int>> index_;
  std::map<int, std::vector<CodedElement>> elems_;
};

bool lex_less(const std::vector<int>& a, const std::vector<int>& sa, const std::vector<int>& b,
              const std::vector<int>& sb, int m, bool& decided) {
  for (int j = 0; j < m; ++j) {
    int x = a[sa[j]], y = b[sb[j]];
    if (x != y) {
      decided = true;
      return x < y;
    }
  }
  decided = false;
  return false;
}

std::vector<int> fit_sigma(Window& w, const TraceTerm& t, int bound) {
  std::vector<int> perm(t.arity);
  std::iota(perm.begin(), perm.end(), 0);
  const auto& diagrams = enum_arity_diagrams(t.arity, t.arity, bound);
  std::vector<std::vector<int>> found;
  do {
    bool ok = true;
    for (const auto& d : diagrams) {
      bool decided = false;
      bool less = lex_less(d.e0.values, perm, d.e1.values, perm, t.arity, decided);
      auto v = w.verdict(t, t, d);
      if (!decided) {
        if (v != std::strong_ordering::equal) ok = false;
      } else if ((v < 0) != less || v == std::strong_ordering::equal) {
        ok = false;
      }
      if (!ok) break;
    }
    if (ok) found.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (found.size() != 1)
    throw NoConsistentFit("no unique priority permutation for a term of arity " +
                          std::to_string(t.arity));
  return found.front();
}

}  // namespace

Predilator normalize_coded(const CodedFunctor& f, int arity_bound) {
  if (arity_bound > kDefaultDiagramBound)
    throw BoundExceeded("arity bound " + std::to_string(arity_bound));
  Window w(f);
  std::vector<TraceTerm> terms;
  for (int k = 0; k <= arity_bound; ++k) {
    std::vector<int> full(k);
    std::iota(full.begin(), full.end(), 0);
    for (const auto& e : w.elements(k))
      if (f.supp_at(k, e) == full) terms.push_back({k, e});
  }
  // Support condition on the sampling window F(2B): every element is F(en)(trace term).
  int wide = 2 * arity_bound;
  for (const auto& e : w.elements(wide)) {
    auto supp = f.supp_at(wide, e);
    if (!std::is_sorted(supp.begin(), supp.end()) ||
        std::adjacent_find(supp.begin(), supp.end()) != supp.end())
      throw SupportViolation("support is not a strictly increasing set");
    if (static_cast<int>(supp.size()) > arity_bound)
      throw BoundExceeded("an element of F(" + std::to_string(wide) + ") has support of size " +
                          std::to_string(supp.size()));
    auto en = IncreasingMap::of(supp, wide);
    int hits = 0;
    for (const auto& t : terms)
      if (t.arity == static_cast<int>(supp.size()) && f.map_at(en, t.code) == e) ++hits;
    if (hits != 1)
      throw SupportViolation("element not uniquely generated by its support (" +
                             std::to_string(hits) + " preimages)");
  }

  int n = static_cast<int>(terms.size());
  std::vector<std::vector<int>> sigma(n);
  for (int i = 0; i < n; ++i) sigma[i] = fit_sigma(w, terms[i], arity_bound);

  std::vector<std::vector<int>> dist(n, std::vector<int>(n, 0));
  std::vector<std::vector<int>> below(n, std::vector<int>(n, 0));  // 1 if i below j
  for (int i = 0; i < n; ++i) dist[i][i] = terms[i].arity;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const auto& diagrams = enum_arity_diagrams(terms[i].arity, terms[j].arity, arity_bound);
      std::vector<std::strong_ordering> verdicts;
      for (const auto& d : diagrams) verdicts.push_back(w.verdict(terms[i], terms[j], d));
      bool fitted = false;
      for (int p = 0; p <= std::min(terms[i].arity, terms[j].arity) && !fitted; ++p) {
        int eps = 0;  // -1: i below j, +1: j below i
        bool ok = true;
        for (std::size_t k = 0; k < diagrams.size() && ok; ++k) {
          if (verdicts[k] == std::strong_ordering::equal) {
            ok = false;
            break;
          }
          bool decided = false;
          bool less = lex_less(diagrams[k].e0.values, sigma[i], diagrams[k].e1.values, sigma[j],
                               p, decided);
          int v = verdicts[k] < 0 ? -1 : 1;
          if (decided) {
            ok = (v == -1) == less;
          } else if (eps == 0) {
            eps = v;
          } else {
            ok = eps == v;
          }
        }
        if (ok && eps != 0) {
          fitted = true;
          dist[i][j] = dist[j][i] = p;
          below[i][j] = eps == -1;
          below[j][i] = eps == 1;
        }
      }
      if (!fitted) throw NoConsistentFit("no distance fits terms " + std::to_string(i) + " and " +
                                         std::to_string(j));
    }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return below[a][b] == 1; });
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!below[order[a]][order[b]]) throw NoConsistentFit("fitted term order is not transitive");

  Predilator p;
  for (int k = 0; k < n; ++k)
    p.add_term({"u" + std::to_string(k), terms[order[k]].arity, sigma[order[k]]});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p.set_dist_entry(a, b, dist[order[a]][order[b]]);
  if (!validate_predilator(p).ok()) throw NoConsistentFit("fitted data is not a predilator");

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (const auto& d : enum_arity_diagrams(p.arity(a), p.arity(b), arity_bound))
        if (compare_under_diagram(p, a, b, d) != (w.verdict(terms[order[a]], terms[order[b]], d) < 0))
          throw NoConsistentFit("comparison theorem fails on a sampled diagram");
  return p;
}

Presentation present(const Predilator& p) {
  Presentation pres;
  pres.total = p.size();
  pres.stage = [p](int k) {
    k = std::min(k, p.size());
    std::vector<int> keep(k);
    std::iota(keep.begin(), keep.end(), 0);
    return PresentedStage{p.restrict(keep), keep};
  };
  return pres;
}

Presentation omega_star_column() {
  Presentation pres;
  pres.stage = [](int k) {
    PresentedStage st;
    for (int pos = 0; pos < k; ++pos) st.p.add_term({"w" + std::to_string(k - 1 - pos), 0, {}});
    for (int i = 0; i < k; ++i) st.presented.push_back(k - 1 - i);
    return st;
  };
  return pres;
}

std::optional<std::vector<AppliedElement>> bad_sequence_probe(const Presentation& pres,
                                                              int carrier_depth, int budget) {
  int want = budget + 1;
  if (pres.total && *pres.total < want) return std::nullopt;
  PresentedStage st = pres.stage(want);
  if (static_cast<int>(st.presented.size()) < want) return std::nullopt;
  std::vector<AppliedElement> elems;
  std::vector<int> index;
  for (int i = 0; i < want; ++i) {
    int t = st.presented[i];
    std::vector<int> c(st.p.arity(t));
    std::iota(c.begin(), c.end(), 0);
    int k = st.p.arity(t);
    if (k > carrier_depth) continue;
    while (true) {
      elems.push_back({t, c});
      index.push_back(i);
      if (static_cast<long long>(elems.size()) > kApplyBudget)
        throw BoundExceeded("probe window too large");
      int p = k - 1;
      while (p >= 0 && c[p] == carrier_depth - k + p) --p;
      if (p < 0) break;
      ++c[p];
      for (int q = p + 1; q < k; ++q) c[q] = c[q - 1] + 1;
    }
  }
  // Longest chain with increasing presentation index and decreasing value.
  int m = static_cast<int>(elems.size());
  std::vector<int> len(m, 1), prev(m, -1);
  int best = -1;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < a; ++b)
      if (index[b] < index[a] && compare_applied(st.p, elems[b], elems[a]) > 0 &&
          len[b] + 1 > len[a]) {
        len[a] = len[b] + 1;
        prev[a] = b;
      }
    if (best < 0 || len[a] > len[best]) best = a;
  }
  if (best < 0 || len[best] < want) return std::nullopt;
  std::vector<AppliedElement> chain;
  for (int a = best; a >= 0; a = prev[a]) chain.push_back(elems[a]);
  std::reverse(chain.begin(), chain.end());
  chain.resize(want);
  return chain;
}

std::optional<std::vector<AppliedElement>> bad_sequence_probe(const Predilator& p,
                                                              int carrier_depth, int budget) {
  return bad_sequence_probe(present(p), carrier_depth, budget);
}

}  // namespace dilator
