#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dilator/predilator.hpp"

namespace dilator {

struct FlowerViolation {
  int s = 0;
  int t = 0;
  ArityDiagram diagram;
  int clause = 0;  // 1: nullary below positive arity, 2: larger maximum wins
};

struct FlowerWitness {
  bool verdict = true;
  std::optional<FlowerViolation> violation;
};

FlowerWitness is_semiflower(const Predilator& p, int bound = kDefaultDiagramBound);

// Terms t -> t^∫ of arity+1; the new maximal argument is compared first.
Predilator integrate(const Predilator& p);
// Positive-arity terms t -> t^∂ of arity-1. Throws NotAFlower.
Predilator differentiate(const Predilator& p);
// Integral/derivative evaluated literally through the diagram rules, for cross-checks.
bool integral_relation(const Predilator& p, int s, int t, const ArityDiagram& d);
bool derivative_relation(const Predilator& p, int s, int t, const ArityDiagram& d);

struct FlowerDecomposition {
  std::vector<int> init;  // nullary term positions, increasing
  Predilator sum;         // Init + ∫(∂P)
  TermMap iso;            // P -> sum
  TermMap inverse;        // sum -> P
};
FlowerDecomposition flower_decompose(const Predilator& p);

// Elements of (∫P)(n) listed as the ordered sum over x < n of P(x), as (x, element of P(x)).
struct SumElement {
  int top = 0;
  AppliedElement inner;
};
std::vector<SumElement> integral_sum_oracle(const Predilator& p, int n);

}  // namespace dilator
