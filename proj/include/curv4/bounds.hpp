#pragma once

// Constrained minimisations behind the sectional-curvature and
// k-positivity bounds for Einstein four-manifolds, normalised to lambda = 1.
//
// Berger problems are gridded in half-spectra variables (lam1, lam2, mu1, mu2)
// with lam3 = 1 - lam1 - lam2 and mu3 = 1 - mu1 - mu2. Admissibility of the
// Berger form is then just the ascending order of each triple. Each box is
// derived from the constraints so that it contains the whole feasible set.

#include "curv4/optimizer.hpp"

#include <optional>

namespace curv4 {

inline const double kSqrt17 = 4.123105625617661;
inline const double kSqrt19 = 4.358898943540674;
/// Lower bound on sectional curvature under 4-positivity.
inline const double kFourPositiveTarget = 4.0 - kSqrt17;
/// Sectional pinching constants of the 3-positivity criterion.
inline const double kPinchLower = (5.0 - kSqrt19) / 12.0;
inline const double kPinchUpper = (14.0 - kSqrt19) / 12.0;
inline const double kThreePositiveTarget = 1.0 / 30.0;

/// Per-problem defaults are used for unset fields.
struct BoundsOptions {
  std::optional<int> grid;
  std::optional<int> depth;
  int threads = 0;
  /// 3-positivity is imposed as margin >= eta (the bound needs it strict).
  double strict_margin = 1e-6;
  /// Shift applied to the strict constraints of the second 3-positivity step.
  double tighten = 1e-3;

  MinimizeOptions resolve(int default_grid = 64, int default_depth = 6) const {
    MinimizeOptions m;
    m.grid = grid.value_or(default_grid);
    m.depth = depth.value_or(default_depth);
    m.threads = threads;
    return m;
  }
};

// Problem encodings, exposed for testing and experimentation.
OptimizationProblem problem_three_positive(double strict_margin = 1e-6);
OptimizationProblem problem_four_positive_proof();
OptimizationProblem problem_four_positive_full();
OptimizationProblem problem_four_positive_relaxed();
OptimizationProblem problem_pinching_step1();
OptimizationProblem problem_pinching_step2(double tighten = 0.0);
OptimizationProblem problem_pinching_step2_mirror(double tighten = 0.0);
OptimizationProblem problem_half_min(double lam3_w);

/// With a2 = k a1, the stationarity and 3-positivity conditions confine a1 to
/// lower(k) < a1 <= upper_minus(k) or a1 >= upper_plus(k).
double k_lower_curve(double k);
double k_upper_minus_curve(double k);
double k_upper_plus_curve(double k);

struct KCurveAnalysis {
  OptimizationResult lower_min;  ///< min of k_lower_curve on [1, 4]
  double lower_at_1 = 0.0;
  double lower_at_4 = 0.0;
  /// Largest k with k_lower_curve(k) <= k_upper_minus_curve(k) (bisection).
  double window_end = 0.0;
  bool window_holds_on_1_to_4 = false;
  /// Plus branch a1 >= upper_plus(k) together with a2 <= a3: smallest and
  /// largest k for which it is feasible.
  OptimizationResult plus_branch_min_k;
  OptimizationResult plus_branch_max_k;
};

KCurveAnalysis analyze_k_curves(const BoundsOptions& options = {});

struct ThreePositiveBound {
  OptimizationResult direct;
  KCurveAnalysis curves;
};

ThreePositiveBound thm11_3pos_sectional_bound(const BoundsOptions& options = {});

struct FourPositiveBound {
  OptimizationResult proof_level;  ///< variables (a1, a2); reproduces 4 - sqrt 17
  OptimizationResult full_berger;  ///< all Berger data, 4-positivity and stationarity
  OptimizationResult relaxed;      ///< full_berger without stationarity
  double scalar_root = 0.0;        ///< smaller root of a^2 - 8a - 1, by bisection
};

FourPositiveBound thm11_4pos_sectional_bound(const BoundsOptions& options = {});

OptimizationResult prop12_step1(const BoundsOptions& options = {});

struct PinchingStep2 {
  OptimizationResult step2;
  OptimizationResult mirror;
  OptimizationResult step2_tightened;
  OptimizationResult mirror_tightened;
};

PinchingStep2 prop12_step2(const BoundsOptions& options = {});

struct HalfMinBound {
  double lam3_w = 0.0;
  OptimizationResult numeric;
  double analytic = 0.0;
  /// Whether the minimiser can be completed to w1 <= w2 <= w3.
  bool ordered_triple_feasible = false;
};

/// 1/2 (2w + 1 - sqrt(12 w^2 + 4 w + 1)).
double half_min_analytic(double lam3_w);

/// Defaults: grid 256, depth 12. Negative lam3_w gives an infeasible result.
HalfMinBound prop13_bound(double lam3_w, const BoundsOptions& options = {});

}  // namespace curv4
