#include "dilator/predilator.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "dilator/error.hpp"

namespace dilator {

int Predilator::find(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (terms_[i].name == name) return i;
  return -1;
}

int Predilator::add_term(Term t) {
  terms_.push_back(std::move(t));
  int n = size();
  for (auto& row : dist_) row.push_back(0);
  dist_.emplace_back(n, 0);
  dist_[n - 1][n - 1] = terms_.back().arity;
  return n - 1;
}

void Predilator::set_dist(int i, int j, int m) {
  dist_.at(i).at(j) = m;
  dist_.at(j).at(i) = m;
}

Predilator Predilator::restrict(const std::vector<int>& keep) const {
  std::vector<int> k = keep;
  std::sort(k.begin(), k.end());
  Predilator out;
  for (int i : k) out.add_term(terms_.at(i));
  for (std::size_t a = 0; a < k.size(); ++a)
    for (std::size_t b = 0; b < k.size(); ++b) out.dist_[a][b] = dist_[k[a]][k[b]];
  return out;
}

Predilator identity_predilator() {
  Predilator p;
  p.add_term({"x", 1, {0}});
  return p;
}

Predilator sum_predilator(int copies) {
  Predilator p;
  for (int i = 0; i < copies; ++i) p.add_term({std::string(1, static_cast<char>('a' + i % 26)) +
                                                   (i >= 26 ? std::to_string(i / 26) : ""),
                                               1,
                                               {0}});
  return p;
}

Predilator nullary_chain(int n) {
  Predilator p;
  for (int i = 0; i < n; ++i) p.add_term({"c" + std::to_string(i), 0, {}});
  return p;
}

Predilator ordered_sum(const Predilator& a, const Predilator& b) {
  Predilator out;
  std::set<std::string> used;
  auto fresh = [&](std::string name) {
    std::string base = name;
    for (int k = 1; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    return name;
  };
  for (const auto& t : a.terms()) out.add_term({fresh(t.name), t.arity, t.sigma});
  for (const auto& t : b.terms()) out.add_term({fresh(t.name), t.arity, t.sigma});
  int na = a.size();
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) out.set_dist_entry(i, j, a.dist(i, j));
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) out.set_dist_entry(na + i, na + j, b.dist(i, j));
  return out;
}

std::string to_string(Clause c) {
  switch (c) {
    case Clause::sigma_length: return "sigma-length";
    case Clause::sigma_permutation: return "sigma-permutation";
    case Clause::self_distance: return "self-distance";
    case Clause::symmetry: return "symmetry";
    case Clause::distance_bound: return "distance-bound";
    case Clause::ultrametric: return "ultrametric";
    case Clause::sigma_compatibility: return "sigma-compatibility";
    case Clause::duplicate_name: return "duplicate-name";
  }
  return "unknown";
}

std::vector<Clause> ValidationReport::clauses() const {
  std::set<Clause> s;
  for (const auto& v : violations) s.insert(v.clause);
  return {s.begin(), s.end()};
}

ValidationReport validate_predilator(const Predilator& p) {
  ValidationReport r;
  int n = p.size();
  auto add = [&](Clause c, std::vector<int> terms, std::string detail) {
    r.violations.push_back({c, std::move(terms), std::move(detail)});
  };
  std::vector<char> sigma_ok(n, 1);
  std::set<std::string> names;
  for (int i = 0; i < n; ++i) {
    const Term& t = p.term(i);
    if (!names.insert(t.name).second) add(Clause::duplicate_name, {i}, "name '" + t.name + "'");
    if (t.arity < 0 || static_cast<int>(t.sigma.size()) != t.arity) {
      add(Clause::sigma_length, {i}, "sigma has " + std::to_string(t.sigma.size()) +
                                         " entries for arity " + std::to_string(t.arity));
      sigma_ok[i] = 0;
      continue;
    }
    std::vector<char> seen(t.arity, 0);
    for (int v : t.sigma) {
      if (v < 0 || v >= t.arity || seen[v]) {
        add(Clause::sigma_permutation, {i}, "sigma is not a permutation");
        sigma_ok[i] = 0;
        break;
      }
      seen[v] = 1;
    }
  }
  for (int i = 0; i < n; ++i)
    if (p.dist(i, i) != p.arity(i))
      add(Clause::self_distance, {i}, "dist(t,t)=" + std::to_string(p.dist(i, i)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (p.dist(i, j) != p.dist(j, i)) add(Clause::symmetry, {i, j}, "asymmetric dist");
      int m = p.dist(i, j);
      if (m < 0 || m > std::min(p.arity(i), p.arity(j)))
        add(Clause::distance_bound, {i, j}, "dist " + std::to_string(m) + " out of range");
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        if (p.dist(i, k) != std::min(p.dist(i, j), p.dist(j, k)))
          add(Clause::ultrametric, {i, j, k}, "dist(s,u) != min(dist(s,t), dist(t,u))");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!sigma_ok[i] || !sigma_ok[j]) continue;
      int m = std::min({p.dist(i, j), p.arity(i), p.arity(j)});
      const auto& si = p.sigma(i);
      const auto& sj = p.sigma(j);
      bool bad = false;
      for (int a = 0; a < m && !bad; ++a)
        for (int b = a + 1; b < m && !bad; ++b)
          if ((si[a] < si[b]) != (sj[a] < sj[b])) bad = true;
      if (bad) add(Clause::sigma_compatibility, {i, j}, "priority patterns disagree below dist");
    }
  return r;
}

std::strong_ordering numeric_order(int a, int b) { return a <=> b; }

std::strong_ordering compare_applied(const Predilator& p, const AppliedElement& x,
                                     const AppliedElement& y, const CarrierOrder& carrier) {
  if (static_cast<int>(x.args.size()) != p.arity(x.term) ||
      static_cast<int>(y.args.size()) != p.arity(y.term))
    throw ArityMismatch("argument count differs from arity");
  int m = p.dist(x.term, y.term);
  const auto& ss = p.sigma(x.term);
  const auto& st = p.sigma(y.term);
  for (int j = 0; j < m; ++j) {
    auto c = carrier(x.args[ss[j]], y.args[st[j]]);
    if (c != std::strong_ordering::equal) return c;
  }
  return x.term <=> y.term;
}

bool compare_under_diagram(const Predilator& p, int s, int t, const ArityDiagram& d) {
  if (d.n0 != p.arity(s) || d.n1 != p.arity(t))
    throw ArityMismatch("diagram arities do not match the terms");
  int m = p.dist(s, t);
  const auto& ss = p.sigma(s);
  const auto& st = p.sigma(t);
  for (int j = 0; j < m; ++j) {
    int a = d.e0.values[ss[j]];
    int b = d.e1.values[st[j]];
    if (a != b) return a < b;
  }
  return s < t;
}

long long applied_size(const Predilator& p, int n) {
  long long total = 0;
  for (const auto& t : p.terms()) {
    if (t.arity > n) continue;
    long long c = 1;
    for (int i = 0; i < t.arity; ++i) {
      c = c * (n - i) / (i + 1);
      if (c > kApplyBudget) return kApplyBudget + 1;
    }
    total += c;
    if (total > kApplyBudget) return kApplyBudget + 1;
  }
  return total;
}

namespace {

template <class F>
void for_each_combination(int n, int k, F&& f) {
  if (k > n) return;
  std::vector<int> c(k);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    f(c);
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

std::vector<AppliedElement> apply_order(const Predilator& p, int n) {
  if (applied_size(p, n) > kApplyBudget)
    throw BoundExceeded("P(" + std::to_string(n) + ") exceeds the enumeration budget");
  std::vector<AppliedElement> out;
  for (int t = 0; t < p.size(); ++t)
    for_each_combination(n, p.arity(t), [&](const std::vector<int>& c) { out.push_back({t, c}); });
  std::sort(out.begin(), out.end(), [&](const AppliedElement& a, const AppliedElement& b) {
    return compare_applied(p, a, b) < 0;
  });
  return out;
}

std::vector<AppliedElement> apply_order(const Predilator& p, const CarrierOrder& carrier,
                                        int limit) {
  if (applied_size(p, limit) > kApplyBudget)
    throw BoundExceeded("truncated application exceeds the enumeration budget");
  std::vector<int> positions(limit);
  std::iota(positions.begin(), positions.end(), 0);
  std::sort(positions.begin(), positions.end(), [&](int a, int b) { return carrier(a, b) < 0; });
  std::vector<AppliedElement> out;
  for (int t = 0; t < p.size(); ++t)
    for_each_combination(limit, p.arity(t), [&](const std::vector<int>& c) {
      AppliedElement e{t, {}};
      for (int i : c) e.args.push_back(positions[i]);
      out.push_back(std::move(e));
    });
  std::sort(out.begin(), out.end(), [&](const AppliedElement& a, const AppliedElement& b) {
    return compare_applied(p, a, b, carrier) < 0;
  });
  return out;
}

std::string to_string(const Predilator& p, const AppliedElement& x) {
  std::string s = p.term(x.term).name + "(";
  for (std::size_t i = 0; i < x.args.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x.args[i]);
  }
  return s + ")";
}

FiniteOrder as_finite_order(const Predilator& p, const std::vector<AppliedElement>& elems) {
  std::vector<std::string> labels;
  for (const auto& e : elems) labels.push_back(to_string(p, e));
  return FiniteOrder(std::move(labels));
}

AppliedElement apply_map(const IncreasingMap& f, const AppliedElement& x) {
  AppliedElement y{x.term, {}};
  for (int a : x.args) y.args.push_back(f(a));
  return y;
}

AppliedMap apply_map(const Predilator& p, const IncreasingMap& f) {
  AppliedMap m;
  m.source = apply_order(p, f.source);
  m.target = apply_order(p, f.target);
  for (const auto& x : m.source) {
    auto y = apply_map(f, x);
    auto it = std::lower_bound(m.target.begin(), m.target.end(), y,
                               [&](const AppliedElement& a, const AppliedElement& b) {
                                 return compare_applied(p, a, b) < 0;
                               });
    m.image.push_back(static_cast<int>(it - m.target.begin()));
  }
  return m;
}

std::vector<int> support(const AppliedElement& x) { return x.args; }

bool check_embedding(const Predilator& p, const Predilator& q, const TermMap& f, int bound) {
  if (static_cast<int>(f.size()) != p.size()) return false;
  for (int i = 0; i < p.size(); ++i) {
    if (f[i] < 0 || f[i] >= q.size()) return false;
    if (p.arity(i) != q.arity(f[i])) return false;
  }
  for (int s = 0; s < p.size(); ++s)
    for (int t = 0; t < p.size(); ++t)
      for (const auto& d : enum_arity_diagrams(p.arity(s), p.arity(t), bound))
        if (compare_under_diagram(p, s, t, d) != compare_under_diagram(q, f[s], f[t], d))
          return false;
  return true;
}

namespace {

// Backtracking over increasing maps that agree on arity, sigma and dist; the final
// answer is always confirmed by the diagram sweep.
bool extend_embedding(const Predilator& p, const Predilator& q, TermMap& f, int i, bool onto,
                      int bound) {
  if (i == p.size()) return check_embedding(p, q, f, bound);
  int lo = i == 0 ? 0 : f[i - 1] + 1;
  int hi = onto ? std::min(q.size() - 1, lo) : q.size() - (p.size() - i);
  for (int c = lo; c <= hi; ++c) {
    if (q.arity(c) != p.arity(i) || q.sigma(c) != p.sigma(i)) continue;
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) ok = q.dist(f[j], c) == p.dist(j, i);
    if (!ok) continue;
    f[i] = c;
    if (extend_embedding(p, q, f, i + 1, onto, bound)) return true;
  }
  return false;
}

}  // namespace

std::optional<TermMap> search_embedding(const Predilator& p, const Predilator& q, int bound) {
  if (p.size() > q.size()) return std::nullopt;
  TermMap f(p.size(), -1);
  if (extend_embedding(p, q, f, 0, false, bound)) return f;
  return std::nullopt;
}

std::optional<TermMap> search_isomorphism(const Predilator& p, const Predilator& q, int bound) {
  if (p.size() != q.size()) return std::nullopt;
  TermMap f(p.size(), -1);
  if (extend_embedding(p, q, f, 0, true, bound)) return f;
  return std::nullopt;
}

bool isomorphic(const Predilator& p, const Predilator& q) {
  return search_isomorphism(p, q).has_value();
}

}  // namespace dilator
