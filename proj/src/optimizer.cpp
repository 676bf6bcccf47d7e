#include "curv4/optimizer.hpp"

#include "curv4/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curv4 {

namespace {

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = std::numeric_limits<std::size_t>::max();
  std::size_t feasible = 0;

  bool better_than(const Candidate& o) const {
    return value < o.value || (value == o.value && index < o.index);
  }
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

double coordinate(const Box& box, std::size_t v, std::size_t i, int grid) {
  if (i == 0) return box.lo[v];
  if (i == static_cast<std::size_t>(grid - 1)) return box.hi[v];
  return box.lo[v] + (box.hi[v] - box.lo[v]) * static_cast<double>(i) / static_cast<double>(grid - 1);
}

void decode(const Box& box, std::size_t index, int grid, std::vector<double>& x) {
  const auto g = static_cast<std::size_t>(grid);
  for (std::size_t v = x.size(); v-- > 0;) {
    x[v] = coordinate(box, v, index % g, grid);
    index /= g;
  }
}

Candidate scan(const OptimizationProblem& p, const Box& box, int grid, int threads) {
  const std::size_t dim = p.variables.size();
  std::size_t total = 1;
  for (std::size_t v = 0; v < dim; ++v) total *= static_cast<std::size_t>(grid);

  const int workers = resolve_threads(threads);
  std::vector<Candidate> partial(static_cast<std::size_t>(std::max(1, workers)));
  parallel_chunks(total, workers, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    Candidate best;
    std::vector<double> x(dim);
    for (std::size_t i = begin; i < end; ++i) {
      decode(box, i, grid, x);
      if (!p.feasible(x)) continue;
      ++best.feasible;
      const double f = p.objective(x);
      if (f < best.value) {
        best.value = f;
        best.index = i;
      }
    }
    partial[chunk] = best;
  });

  Candidate best;
  std::size_t feasible = 0;
  for (const Candidate& c : partial) {
    feasible += c.feasible;
    if (c.index != std::numeric_limits<std::size_t>::max() && c.better_than(best)) best = c;
  }
  best.feasible = feasible;
  return best;
}

double resolution(const Box& box, int grid) {
  double r = 0.0;
  for (std::size_t v = 0; v < box.lo.size(); ++v)
    r = std::max(r, (box.hi[v] - box.lo[v]) / static_cast<double>(grid - 1));
  return r;
}

}  // namespace

bool OptimizationProblem::feasible(std::span<const double> x) const {
  for (const Constraint& c : constraints) {
    const double m = c.margin(x);
    if (!(m >= -feas_tol)) return false;
  }
  return true;
}

double OptimizationProblem::min_margin(std::span<const double> x) const {
  double m = std::numeric_limits<double>::infinity();
  for (const Constraint& c : constraints) m = std::min(m, c.margin(x));
  return m;
}

OptimizationResult minimize(const OptimizationProblem& problem, const MinimizeOptions& options) {
  if (options.grid < 8) throw std::invalid_argument("minimize: grid must be at least 8");
  if (options.depth < 0) throw std::invalid_argument("minimize: depth must be nonnegative");
  if (!(options.shrink > 0.0 && options.shrink < 1.0))
    throw std::invalid_argument("minimize: shrink must lie in (0, 1)");
  const std::size_t dim = problem.variables.size();
  if (dim == 0) throw std::invalid_argument("minimize: no variables");

  Box outer;
  for (const Variable& v : problem.variables) {
    if (!(v.lo <= v.hi)) throw std::invalid_argument("minimize: empty box for " + v.name);
    outer.lo.push_back(v.lo);
    outer.hi.push_back(v.hi);
  }

  OptimizationResult result;
  result.problem = problem.name;
  result.grid = options.grid;
  std::size_t per_round = 1;
  for (std::size_t v = 0; v < dim; ++v) per_round *= static_cast<std::size_t>(options.grid);

  Candidate first = scan(problem, outer, options.grid, options.threads);
  result.points_evaluated = per_round;
  result.feasible_points_evaluated = first.feasible;
  result.grid_resolution = resolution(outer, options.grid);
  if (first.index == std::numeric_limits<std::size_t>::max()) {
    result.feasible = false;
    result.best_value = std::numeric_limits<double>::infinity();
    return result;
  }

  std::vector<double> best(dim);
  decode(outer, first.index, options.grid, best);
  double best_value = first.value;

  for (int r = 1; r <= options.depth; ++r) {
    const double scale = std::pow(options.shrink, r);
    Box local;
    for (std::size_t v = 0; v < dim; ++v) {
      const double half = 0.5 * (outer.hi[v] - outer.lo[v]) * scale;
      local.lo.push_back(std::max(outer.lo[v], best[v] - half));
      local.hi.push_back(std::min(outer.hi[v], best[v] + half));
    }
    const Candidate c = scan(problem, local, options.grid, options.threads);
    result.points_evaluated += per_round;
    result.feasible_points_evaluated += c.feasible;
    result.grid_resolution = resolution(local, options.grid);
    result.refinement_depth = r;
    if (c.index != std::numeric_limits<std::size_t>::max() && c.value < best_value) {
      best_value = c.value;
      decode(local, c.index, options.grid, best);
    }
  }

  result.feasible = true;
  result.best_value = best_value;
  result.point = best;
  for (std::size_t v = 0; v < dim; ++v) result.minimizer.emplace_back(problem.variables[v].name, best[v]);
  if (problem.derived)
    for (auto& nv : problem.derived(best)) result.minimizer.push_back(std::move(nv));
  return result;
}

}  // namespace curv4
