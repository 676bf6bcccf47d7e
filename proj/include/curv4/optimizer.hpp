#pragma once

// Deterministic box-constrained global minimisation by exhaustive uniform
// gridding followed by local re-gridding around the incumbent. Results are
// certified only to the resolution of the finest grid visited.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace curv4 {

struct Variable {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
};

/// Feasible iff margin(x) >= -feas_tol.
struct Constraint {
  std::string name;
  std::function<double(std::span<const double>)> margin;
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct OptimizationProblem {
  std::string name;
  std::vector<Variable> variables;
  std::function<double(std::span<const double>)> objective;
  std::vector<Constraint> constraints;
  double feas_tol = 1e-9;
  /// Optional: values of the variables eliminated by equality constraints,
  /// reported next to the minimizer.
  std::function<NamedValues(std::span<const double>)> derived;

  bool feasible(std::span<const double> x) const;
  /// Smallest constraint margin at x (+inf without constraints).
  double min_margin(std::span<const double> x) const;
};

struct MinimizeOptions {
  int grid = 64;
  int depth = 6;
  double shrink = 0.25;
  int threads = 0;  ///< 0: hardware concurrency
};

struct OptimizationResult {
  std::string problem;
  bool feasible = false;
  double best_value = 0.0;
  std::vector<double> point;
  NamedValues minimizer;  ///< variables followed by derived values
  /// Largest grid spacing over all variables in the last round.
  double grid_resolution = 0.0;
  int grid = 0;
  int refinement_depth = 0;
  std::size_t feasible_points_evaluated = 0;
  std::size_t points_evaluated = 0;
};

/// Grid with `grid` points per axis including both endpoints, then `depth`
/// rounds over the box of half-width shrink^r * (hi - lo) / 2 around the
/// incumbent, clipped to the original box. Ties are broken by the lowest
/// grid index, so the result does not depend on the thread count.
/// Throws std::invalid_argument unless grid >= 8 and depth >= 0.
OptimizationResult minimize(const OptimizationProblem& problem, const MinimizeOptions& options = {});

}  // namespace curv4
