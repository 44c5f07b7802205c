#pragma once

#include <optional>
#include <vector>

#include "dilator/dendrogram.hpp"

namespace dilator {

// Elementary comparison types between elements of Dec•(d), as interleaved elements.
//  A: child below its parent, parent parameters a prefix of the child's.
//  B: siblings in sibling order, equal parameters.
//  C: same parent (or the same node), parameters equal except a smaller last one.
//  D: one level deeper. `literal` marks the plain form (u before parent(v) among
//     siblings, u's parameters a prefix of v's); otherwise u = parent(v) and u's
//     last parameter is below v's at that position.
enum class StepType { A, B, C, D };
char to_char(StepType t);

struct StepKind {
  StepType type;
  bool literal = true;
  bool operator==(const StepKind&) const = default;
};

// Classifies `lower < upper` as an elementary comparison; nullopt when none applies.
std::optional<StepKind> classify_step(const Dendrogram& d, const DendroElement& lower,
                                      const DendroElement& upper);

struct ElementaryChain {
  int carrier = 0;                      // all elements live below this bound
  std::vector<DendroElement> elements;  // z_0 < z_1 < ... < z_k
  std::vector<StepKind> steps;          // steps[i] types z_i < z_{i+1}
};

// Parameters are padded by v -> 2v + 2 so that lowered values fit between them.
// Throws NotLess unless x < y.
ElementaryChain elementary_decompose(const Dendrogram& d, const DendroElement& x,
                                     const DendroElement& y);
ElementaryChain elementary_decompose(const Dendrogram& d, const AppliedElement& x,
                                     const AppliedElement& y);

// Checks order, step classification and agreement with compare_applied over Dec•(d).
bool verify_chain(const Dendrogram& d, const ElementaryChain& c);

struct ElementaryInstance {
  DendroElement lower, upper;
  StepKind kind;
};
// Every elementary pair among elements of Dec•(d)(n) with n = 2 * (max length).
std::vector<ElementaryInstance> elementary_instances(const Dendrogram& d);

// Pairs x, y of equal length m >= 1 with x(m) < y(m) where neither
// (same parent and x before y) nor parent(x)(m minus e(parent x)) < y(m) holds.
struct ParentComparisonFailure {
  int x = 0, y = 0;
};
std::vector<ParentComparisonFailure> parent_comparison_failures(const Dendrogram& d);

}  // namespace dilator
