#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qmvtm/machine.hpp"

namespace qmvtm {

/// Exploration limits. The acceptance value is an infimum over unboundedly
/// long paths; max_steps bounds path length (depth) or level count (width).
struct Budget {
  std::size_t max_steps = 500;
  /// k-vector dominance pruning; silently disabled when the algebra fails the
  /// monotone-addition probe.
  bool prune = true;
};

struct EvalResult {
  /// Meet over the halting paths found; 1 when none was found.
  Element value;
  /// No non-halting configuration was left unexplored at budget exhaustion.
  bool complete = false;
  /// At least one halting path exists.
  bool defined = false;
  std::size_t levels = 0;
  std::size_t paths = 0;
  std::size_t pruned = 0;

  friend bool operator==(const EvalResult&, const EvalResult&) = default;
};

/// Count vector of a path's values over the sorted machine range R_M.
struct KVector {
  std::vector<FiniteAlgebra::Index> basis;
  std::vector<std::uint32_t> counts;

  friend bool operator==(const KVector&, const KVector&) = default;
};

/// v <= w componentwise (so every extension of v's path is at most w's).
bool dominates(const KVector& v, const KVector& w);
/// Recombines a k-vector: v1.x1 boxplus ... boxplus vk.xk.
FiniteAlgebra::Index kvector_value(const FiniteAlgebra& algebra, const KVector& v);

/// Fold of I(q0), the step values and T(St(Cn)) along an explicit path.
/// Throws InvalidArgument for a non-effective step, a non-initial start,
/// a halting intermediate or a non-halting terminal configuration.
Element path_value(const Machine& m, std::span<const Configuration> path);
KVector path_vector(const Machine& m, std::span<const Configuration> path);

/// Depth-first value: meet over halting paths of the boxplus-fold along each path.
EvalResult eval_depth(const Machine& m, const Word& input, const Budget& budget = {});
/// Width-first value: per-level meet of accumulated values before adding the
/// next step, meet over levels of the halting contributions.
EvalResult eval_width(const Machine& m, const Word& input, const Budget& budget = {});

}  // namespace qmvtm
