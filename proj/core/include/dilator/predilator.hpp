#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dilator/order.hpp"

namespace dilator {

struct Term {
  std::string name;
  int arity = 0;
  std::vector<int> sigma;  // sigma[j] = argument slot compared j-th
  bool operator==(const Term&) const = default;
};

// Abstract form of a finite predilator. Terms are stored in increasing term order;
// dist is a full symmetric matrix.
class Predilator {
public:
  Predilator() = default;

  int size() const { return static_cast<int>(terms_.size()); }
  const Term& term(int i) const { return terms_.at(i); }
  const std::vector<Term>& terms() const { return terms_; }
  int arity(int i) const { return terms_.at(i).arity; }
  const std::vector<int>& sigma(int i) const { return terms_.at(i).sigma; }
  int dist(int i, int j) const { return dist_.at(i).at(j); }
  int find(const std::string& name) const;  // -1 if absent

  // Appends a term above all current ones; dist to earlier terms defaults to 0.
  int add_term(Term t);
  void set_dist(int i, int j, int m);
  // Raw access for mutation tests; does not keep symmetry.
  void set_dist_entry(int i, int j, int m) { dist_.at(i).at(j) = m; }
  Term& mutable_term(int i) { return terms_.at(i); }

  // Restriction to the listed term positions (kept in increasing order).
  Predilator restrict(const std::vector<int>& keep) const;

  bool operator==(const Predilator&) const = default;

private:
  std::vector<Term> terms_;
  std::vector<std::vector<int>> dist_;
};

Predilator identity_predilator();   // X
Predilator sum_predilator(int copies);  // X + X + ... (unary terms, dist 0)
Predilator ordered_sum(const Predilator& a, const Predilator& b);
Predilator nullary_chain(int n);

enum class Clause {
  sigma_length,
  sigma_permutation,
  self_distance,
  symmetry,
  distance_bound,
  ultrametric,
  sigma_compatibility,
  duplicate_name,
};
std::string to_string(Clause c);

struct Violation {
  Clause clause;
  std::vector<int> terms;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::vector<Clause> clauses() const;  // distinct, sorted
};

ValidationReport validate_predilator(const Predilator& p);

struct AppliedElement {
  int term = 0;
  std::vector<int> args;
  bool operator==(const AppliedElement&) const = default;
};

using CarrierOrder = std::function<std::strong_ordering(int, int)>;
std::strong_ordering numeric_order(int a, int b);

std::strong_ordering compare_applied(const Predilator& p, const AppliedElement& x,
                                     const AppliedElement& y,
                                     const CarrierOrder& carrier = numeric_order);
bool compare_under_diagram(const Predilator& p, int s, int t, const ArityDiagram& d);

// Elements of P(n) sorted increasingly.
std::vector<AppliedElement> apply_order(const Predilator& p, int n);
// A countable carrier truncated to positions 0..limit-1, ordered by `carrier`.
std::vector<AppliedElement> apply_order(const Predilator& p, const CarrierOrder& carrier, int limit);
FiniteOrder as_finite_order(const Predilator& p, const std::vector<AppliedElement>& elems);
std::string to_string(const Predilator& p, const AppliedElement& x);
long long applied_size(const Predilator& p, int n);

inline constexpr long long kApplyBudget = 2'000'000;

AppliedElement apply_map(const IncreasingMap& f, const AppliedElement& x);
struct AppliedMap {
  std::vector<AppliedElement> source;
  std::vector<AppliedElement> target;
  std::vector<int> image;  // image[i] = position of f(source[i]) in target
};
AppliedMap apply_map(const Predilator& p, const IncreasingMap& f);
std::vector<int> support(const AppliedElement& x);

// Term maps are vectors: f[i] = image of P's term i in Q.
using TermMap = std::vector<int>;
bool check_embedding(const Predilator& p, const Predilator& q, const TermMap& f,
                     int bound = kDefaultDiagramBound);
std::optional<TermMap> search_embedding(const Predilator& p, const Predilator& q,
                                        int bound = kDefaultDiagramBound);
std::optional<TermMap> search_isomorphism(const Predilator& p, const Predilator& q,
                                          int bound = kDefaultDiagramBound);
bool isomorphic(const Predilator& p, const Predilator& q);

// Functor given by finite codes: F(n) listed increasingly, F(f), and supports.
using CodedElement = std::vector<int>;
struct CodedFunctor {
  std::function<std::vector<CodedElement>(int)> order_at;
  std::function<CodedElement(const IncreasingMap&, const CodedElement&)> map_at;
  std::function<std::vector<int>(int, const CodedElement&)> supp_at;
};

// t(a) is coded as [t, a_0, ..., a_{k-1}].
CodedFunctor as_coded(const Predilator& p);
// A coded functor with explicit laziness: F(n) = n + n (element [side, x]).
CodedFunctor double_functor();
CodedFunctor identity_functor();

Predilator normalize_coded(const CodedFunctor& f, int arity_bound);

// Countably presented predilator: stage(k) gives the predilator on the first k presented
// terms together with presented[i] = position of the i-th presented term.
struct PresentedStage {
  Predilator p;
  std::vector<int> presented;
};
struct Presentation {
  std::function<PresentedStage(int)> stage;
  std::optional<int> total;  // number of terms for finite presentations
};
Presentation present(const Predilator& p);
// Nullary terms, each presented below all earlier ones.
Presentation omega_star_column();

std::optional<std::vector<AppliedElement>> bad_sequence_probe(const Presentation& pres,
                                                              int carrier_depth, int budget);
std::optional<std::vector<AppliedElement>> bad_sequence_probe(const Predilator& p,
                                                              int carrier_depth, int budget);

}  // namespace dilator
