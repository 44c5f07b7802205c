#include "dilator/flower.hpp"

#include <algorithm>

#include "dilator/error.hpp"

namespace dilator {

FlowerWitness is_semiflower(const Predilator& p, int bound) {
  FlowerWitness w;
  for (int s = 0; s < p.size(); ++s)
    for (int t = 0; t < p.size(); ++t) {
      int as = p.arity(s), at = p.arity(t);
      if (as == 0 && at > 0) {
        for (const auto& d : enum_arity_diagrams(as, at, bound))
          if (!compare_under_diagram(p, s, t, d)) {
            w.verdict = false;
            w.violation = FlowerViolation{s, t, d, 1};
            return w;
          }
      } else if (as > 0 && at > 0) {
        for (const auto& d : enum_arity_diagrams(as, at, bound))
          if (d.e0.values.back() < d.e1.values.back() && !compare_under_diagram(p, s, t, d)) {
            w.verdict = false;
            w.violation = FlowerViolation{s, t, d, 2};
            return w;
          }
      }
    }
  return w;
}

Predilator integrate(const Predilator& p) {
  Predilator out;
  for (const auto& t : p.terms()) {
    Term u{t.name, t.arity + 1, {t.arity}};
    u.sigma.insert(u.sigma.end(), t.sigma.begin(), t.sigma.end());
    out.add_term(std::move(u));
  }
  for (int i = 0; i < p.size(); ++i)
    for (int j = 0; j < p.size(); ++j) out.set_dist_entry(i, j, p.dist(i, j) + 1);
  return out;
}

Predilator differentiate(const Predilator& p) {
  auto w = is_semiflower(p);
  if (!w.verdict) {
    const auto& v = *w.violation;
    throw NotAFlower("clause " + std::to_string(v.clause) + " fails for terms '" +
                     p.term(v.s).name + "' and '" + p.term(v.t).name + "'");
  }
  std::vector<int> keep;
  for (int i = 0; i < p.size(); ++i)
    if (p.arity(i) > 0) keep.push_back(i);
  Predilator out;
  for (int i : keep) {
    const Term& t = p.term(i);
    out.add_term({t.name, t.arity - 1, std::vector<int>(t.sigma.begin() + 1, t.sigma.end())});
  }
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b)
      out.set_dist_entry(static_cast<int>(a), static_cast<int>(b), p.dist(keep[a], keep[b]) - 1);
  return out;
}

bool integral_relation(const Predilator& p, int s, int t, const ArityDiagram& d) {
  if (d.n0 != p.arity(s) + 1 || d.n1 != p.arity(t) + 1)
    throw ArityMismatch("diagram does not fit the integrated terms");
  int ms = d.e0.values.back(), mt = d.e1.values.back();
  if (ms != mt) return ms < mt;
  std::vector<int> a(d.e0.values.begin(), d.e0.values.end() - 1);
  std::vector<int> b(d.e1.values.begin(), d.e1.values.end() - 1);
  return compare_under_diagram(p, s, t, diagram_of(a, b));
}

bool derivative_relation(const Predilator& p, int s, int t, const ArityDiagram& d) {
  if (d.n0 + 1 != p.arity(s) || d.n1 + 1 != p.arity(t))
    throw ArityMismatch("diagram does not fit the differentiated terms");
  std::vector<int> a = d.e0.values, b = d.e1.values;
  a.push_back(d.n_join);
  b.push_back(d.n_join);
  return compare_under_diagram(p, s, t, diagram_of(a, b));
}

FlowerDecomposition flower_decompose(const Predilator& p) {
  Predilator rest = differentiate(p);  // throws NotAFlower
  FlowerDecomposition out;
  std::vector<int> positive;
  for (int i = 0; i < p.size(); ++i) (p.arity(i) == 0 ? out.init : positive).push_back(i);
  out.sum = ordered_sum(p.restrict(out.init), integrate(rest));
  out.iso.assign(p.size(), -1);
  for (std::size_t k = 0; k < out.init.size(); ++k) out.iso[out.init[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < positive.size(); ++k)
    out.iso[positive[k]] = static_cast<int>(out.init.size() + k);
  out.inverse.assign(p.size(), -1);
  for (int i = 0; i < p.size(); ++i) out.inverse[out.iso[i]] = i;
  if (!check_embedding(p, out.sum, out.iso) || !check_embedding(out.sum, p, out.inverse))
    throw InvalidPredilator("decomposition map is not an isomorphism");
  return out;
}

std::vector<SumElement> integral_sum_oracle(const Predilator& p, int n) {
  std::vector<SumElement> out;
  for (int x = 0; x < n; ++x)
    for (auto& e : apply_order(p, x)) out.push_back({x, std::move(e)});
  return out;
}

}  // namespace dilator
