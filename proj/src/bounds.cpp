#include "curv4/bounds.hpp"

#include "curv4/hamilton.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace curv4 {

namespace {

struct Spectra {
  Triple lam;
  Triple mu;
};

// x = (lam1, lam2, mu1, mu2), each triple summing to 1.
Spectra spectra(std::span<const double> x) {
  return {{x[0], x[1], 1.0 - x[0] - x[1]}, {x[2], x[3], 1.0 - x[2] - x[3]}};
}

Triple a_of(const Spectra& s) {
  return {0.5 * (s.lam[0] + s.mu[0]), 0.5 * (s.lam[1] + s.mu[1]), 0.5 * (s.lam[2] + s.mu[2])};
}

Triple b_of(const Spectra& s) {
  return {0.5 * (s.lam[0] - s.mu[0]), 0.5 * (s.lam[1] - s.mu[1]), 0.5 * (s.lam[2] - s.mu[2])};
}

double smallest_sum(const Spectra& s, int k) {
  std::array<double, 6> ev{s.lam[0], s.lam[1], s.lam[2], s.mu[0], s.mu[1], s.mu[2]};
  std::sort(ev.begin(), ev.end());
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += ev[static_cast<std::size_t>(i)];
  return sum;
}

std::vector<Variable> spectra_box(double l1_lo, double l1_hi, double l2_lo, double l2_hi) {
  return {{"lam1", l1_lo, l1_hi}, {"lam2", l2_lo, l2_hi}, {"mu1", l1_lo, l1_hi}, {"mu2", l2_lo, l2_hi}};
}

std::vector<Constraint> ordering_constraints() {
  return {
      {"lam2 - lam1", [](std::span<const double> x) { return x[1] - x[0]; }},
      {"lam3 - lam2", [](std::span<const double> x) { return 1.0 - x[0] - 2.0 * x[1]; }},
      {"mu2 - mu1", [](std::span<const double> x) { return x[3] - x[2]; }},
      {"mu3 - mu2", [](std::span<const double> x) { return 1.0 - x[2] - 2.0 * x[3]; }},
  };
}

NamedValues berger_values(std::span<const double> x) {
  const Spectra s = spectra(x);
  const Triple a = a_of(s);
  const Triple b = b_of(s);
  return {{"lam3", s.lam[2]}, {"mu3", s.mu[2]}, {"a1", a[0]}, {"a2", a[1]}, {"a3", a[2]},
          {"b1", b[0]},       {"b2", b[1]},     {"b3", b[2]}};
}

double objective_a1(std::span<const double> x) { return 0.5 * (x[0] + x[2]); }

Constraint stationarity_min_sectional() {
  return {"a1 - (a1^2 + b1^2 + 2 a2 a3 + 2 b2 b3)", [](std::span<const double> x) {
            const Spectra s = spectra(x);
            return stationarity_margin_min_sectional(a_of(s), b_of(s), 1.0);
          }};
}

OptimizationResult infeasible_result(const std::string& name, const MinimizeOptions& m) {
  OptimizationResult r;
  r.problem = name;
  r.feasible = false;
  r.best_value = std::numeric_limits<double>::infinity();
  r.grid = m.grid;
  return r;
}

template <typename F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

OptimizationProblem problem_three_positive(double strict_margin) {
  OptimizationProblem p;
  p.name = "3-positive sectional bound";
  // lam1 <= 1/3 by the trace; 3-positivity gives lam1 > -(mu1 + mu2) >= -2/3,
  // kept generous at -5/3; lam2 <= (1 - lam1) / 2.
  p.variables = spectra_box(-5.0 / 3.0, 1.0 / 3.0, -5.0 / 3.0, 4.0 / 3.0);
  p.objective = objective_a1;
  p.constraints = ordering_constraints();
  p.constraints.push_back({"3-positive margin - eta", [strict_margin](std::span<const double> x) {
                             return smallest_sum(spectra(x), 3) - strict_margin;
                           }});
  p.constraints.push_back(stationarity_min_sectional());
  p.derived = berger_values;
  return p;
}

OptimizationProblem problem_four_positive_proof() {
  OptimizationProblem p;
  p.name = "4-positive sectional bound (a1, a2)";
  // a1 <= 1/3; a2 >= -a1 and a3 = 1 - a1 - a2 <= 1 keep a1 >= -1 and a2 in [-1, 1].
  p.variables = {{"a1", -1.0, 1.0 / 3.0}, {"a2", -1.0, 1.0}};
  p.objective = [](std::span<const double> x) { return x[0]; };
  p.constraints = {
      {"a2 - a1", [](std::span<const double> x) { return x[1] - x[0]; }},
      {"a3 - a2", [](std::span<const double> x) { return 1.0 - x[0] - 2.0 * x[1]; }},
      {"a1 + a2", [](std::span<const double> x) { return x[0] + x[1]; }},
      {"1 - a3", [](std::span<const double> x) { return x[0] + x[1]; }},
      {"a1 - (a1^2 + 2 a2 a3 - (a3 - a2)^2 / 2)",
       [](std::span<const double> x) {
         const double a1 = x[0];
         const double a2 = x[1];
         const double a3 = 1.0 - a1 - a2;
         return a1 - (a1 * a1 + 2.0 * a2 * a3 - 0.5 * (a3 - a2) * (a3 - a2));
       }},
  };
  p.derived = [](std::span<const double> x) { return NamedValues{{"a3", 1.0 - x[0] - x[1]}}; };
  return p;
}

OptimizationProblem problem_four_positive_full() {
  OptimizationProblem p = problem_four_positive_relaxed();
  p.name = "4-positive sectional bound (Berger data)";
  p.constraints.push_back(stationarity_min_sectional());
  return p;
}

OptimizationProblem problem_four_positive_relaxed() {
  OptimizationProblem p;
  p.name = "4-positive sectional bound without stationarity";
  // 4-positivity gives 1 + lam1 > 0; lam1 <= 1/3 and lam2 <= (1 - lam1) / 2 <= 1.
  p.variables = spectra_box(-1.0, 1.0 / 3.0, -1.0, 1.0);
  p.objective = objective_a1;
  p.constraints = ordering_constraints();
  p.constraints.push_back(
      {"4-positive margin", [](std::span<const double> x) { return smallest_sum(spectra(x), 4); }});
  p.derived = berger_values;
  return p;
}

OptimizationProblem problem_pinching_step1() {
  OptimizationProblem p;
  p.name = "pinching step 1: min a1";
  // a3 <= c forces lam3, mu3 <= 2c - 1/3, hence lam1 >= 1 - 2 (2c - 1/3).
  const double c = kPinchUpper;
  const double lb = 1.0 - 2.0 * (2.0 * c - 1.0 / 3.0);
  p.variables = spectra_box(lb, 1.0 / 3.0, lb, 0.5 * (1.0 - lb));
  p.objective = objective_a1;
  p.constraints = ordering_constraints();
  p.constraints.push_back({"(14 - sqrt19)/12 - a3", [c](std::span<const double> x) {
                             return c - a_of(spectra(x))[2];
                           }});
  p.constraints.push_back(stationarity_min_sectional());
  p.derived = berger_values;
  return p;
}

namespace {

OptimizationProblem pinching_step2(double tighten, bool mirror) {
  OptimizationProblem p;
  p.name = mirror ? "pinching step 2 (mirror): min 1 + lam1 - mu3"
                  : "pinching step 2: min 1 + mu1 - lam3";
  if (tighten != 0.0) p.name += " (tightened)";
  const double upper = 2.0 * kPinchUpper - tighten;
  const double lower = 2.0 * kPinchLower + tighten;
  // lam1 + mu1 >= lower with mu1 <= 1/3 gives lam1 >= lower - 1/3.
  const double lo = 2.0 * kPinchLower - 1.0 / 3.0;
  p.variables = spectra_box(lo, 1.0 / 3.0, lo, 0.5 * (1.0 - lo));
  if (mirror)
    p.objective = [](std::span<const double> x) {
      const Spectra s = spectra(x);
      return 1.0 + s.lam[0] - s.mu[2];
    };
  else
    p.objective = [](std::span<const double> x) {
      const Spectra s = spectra(x);
      return 1.0 + s.mu[0] - s.lam[2];
    };
  p.constraints = ordering_constraints();
  p.constraints.push_back({"(14 - sqrt19)/6 - (lam3 + mu3)", [upper](std::span<const double> x) {
                             const Spectra s = spectra(x);
                             return upper - (s.lam[2] + s.mu[2]);
                           }});
  p.constraints.push_back({"lam1 + mu1 - (5 - sqrt19)/6", [lower](std::span<const double> x) {
                             const Spectra s = spectra(x);
                             return s.lam[0] + s.mu[0] - lower;
                           }});
  if (mirror)
    p.constraints.push_back({"3-sum stationarity (mirror)", [](std::span<const double> x) {
                               const Spectra s = spectra(x);
                               return stationarity_margin_three_sum_mirror({s.lam, s.mu});
                             }});
  else
    p.constraints.push_back({"3-sum stationarity", [](std::span<const double> x) {
                               const Spectra s = spectra(x);
                               return stationarity_margin_three_sum({s.lam, s.mu});
                             }});
  p.derived = berger_values;
  return p;
}

}  // namespace

OptimizationProblem problem_pinching_step2(double tighten) { return pinching_step2(tighten, false); }

OptimizationProblem problem_pinching_step2_mirror(double tighten) {
  return pinching_step2(tighten, true);
}

OptimizationProblem problem_half_min(double lam3_w) {
  OptimizationProblem p;
  p.name = "half-operator minimum";
  // w2 = -w1 - w3 <= w3 and w1 <= w3.
  p.variables = {{"w1", -2.0 * lam3_w, lam3_w}};
  p.objective = [](std::span<const double> x) { return x[0]; };
  p.constraints = {
      {"w3 - w1", [lam3_w](std::span<const double> x) { return lam3_w - x[0]; }},
      {"w3 - w2", [lam3_w](std::span<const double> x) { return 2.0 * lam3_w + x[0]; }},
      {"l1 - (l1^2 + 2 l2 l3)",
       [lam3_w](std::span<const double> x) {
         const double t = 1.0 / 3.0;
         return stationarity_margin_half_min({t + x[0], t - x[0] - lam3_w, t + lam3_w}, 1.0);
       }},
  };
  p.derived = [lam3_w](std::span<const double> x) {
    return NamedValues{{"w2", -x[0] - lam3_w}, {"w3", lam3_w}};
  };
  return p;
}

double k_lower_curve(double k) { return (2.0 * k - 1.0) / (5.0 * k * k + 14.0 * k + 11.0); }

double k_upper_minus_curve(double k) {
  return (4.0 * k - std::sqrt(8.0 * k * k - 8.0 * k + 1.0)) / (8.0 * k * k + 8.0 * k - 1.0);
}

double k_upper_plus_curve(double k) {
  return (4.0 * k + std::sqrt(8.0 * k * k - 8.0 * k + 1.0)) / (8.0 * k * k + 8.0 * k - 1.0);
}

KCurveAnalysis analyze_k_curves(const BoundsOptions& options) {
  const MinimizeOptions m = options.resolve();
  KCurveAnalysis out;

  OptimizationProblem lower;
  lower.name = "min of (2k - 1)/(5k^2 + 14k + 11) on [1, 4]";
  lower.variables = {{"k", 1.0, 4.0}};
  lower.objective = [](std::span<const double> x) { return k_lower_curve(x[0]); };
  out.lower_min = minimize(lower, m);
  out.lower_at_1 = k_lower_curve(1.0);
  out.lower_at_4 = k_lower_curve(4.0);

  const auto gap = [](double k) { return k_upper_minus_curve(k) - k_lower_curve(k); };
  out.window_holds_on_1_to_4 = true;
  for (int i = 0; i <= 300; ++i)
    if (!(gap(1.0 + 3.0 * i / 300.0) > 0.0)) out.window_holds_on_1_to_4 = false;
  if (out.window_holds_on_1_to_4) {
    out.window_end = 4.0;
  } else {
    double lo = 1.0;
    while (gap(lo + 0.01) > 0.0) lo += 0.01;
    out.window_end = bisect(gap, lo, lo + 0.01);
  }

  OptimizationProblem plus;
  plus.variables = {{"k", 1.0, 4.0}, {"a1", 0.0, 1.0 / 3.0}};
  plus.constraints = {
      {"a1 - upper_plus(k)",
       [](std::span<const double> x) { return x[1] - k_upper_plus_curve(x[0]); }},
      {"a3 - a2", [](std::span<const double> x) { return 1.0 - (1.0 + 2.0 * x[0]) * x[1]; }},
  };
  plus.name = "plus branch: smallest k";
  plus.objective = [](std::span<const double> x) { return x[0]; };
  out.plus_branch_min_k = minimize(plus, m);
  plus.name = "plus branch: largest k (objective -k)";
  plus.objective = [](std::span<const double> x) { return -x[0]; };
  out.plus_branch_max_k = minimize(plus, m);
  return out;
}

ThreePositiveBound thm11_3pos_sectional_bound(const BoundsOptions& options) {
  return {minimize(problem_three_positive(options.strict_margin), options.resolve()),
          analyze_k_curves(options)};
}

FourPositiveBound thm11_4pos_sectional_bound(const BoundsOptions& options) {
  const MinimizeOptions m = options.resolve();
  FourPositiveBound out;
  out.proof_level = minimize(problem_four_positive_proof(), m);
  out.full_berger = minimize(problem_four_positive_full(), m);
  out.relaxed = minimize(problem_four_positive_relaxed(), m);
  // a >= a^2/2 - 3a - 1/2: the boundary value a3 = 1, a2 = -a1 in the
  // stationarity inequality.
  out.scalar_root = bisect([](double a) { return a - (0.5 * a * a - 3.0 * a - 0.5); }, -1.0, 0.0);
  return out;
}

OptimizationResult prop12_step1(const BoundsOptions& options) {
  return minimize(problem_pinching_step1(), options.resolve());
}

PinchingStep2 prop12_step2(const BoundsOptions& options) {
  const MinimizeOptions m = options.resolve();
  return {minimize(problem_pinching_step2(0.0), m), minimize(problem_pinching_step2_mirror(0.0), m),
          minimize(problem_pinching_step2(options.tighten), m),
          minimize(problem_pinching_step2_mirror(options.tighten), m)};
}

double half_min_analytic(double lam3_w) {
  return 0.5 * (2.0 * lam3_w + 1.0 - std::sqrt(12.0 * lam3_w * lam3_w + 4.0 * lam3_w + 1.0));
}

HalfMinBound prop13_bound(double lam3_w, const BoundsOptions& options) {
  const MinimizeOptions m = options.resolve(256, 12);
  HalfMinBound out;
  out.lam3_w = lam3_w;
  out.analytic = half_min_analytic(lam3_w);
  if (!(lam3_w >= 0.0)) {
    out.numeric = infeasible_result(problem_half_min(0.0).name, m);
    return out;
  }
  out.numeric = minimize(problem_half_min(lam3_w), m);
  out.ordered_triple_feasible =
      out.numeric.feasible && out.numeric.best_value <= -0.5 * lam3_w + 1e-12;
  return out;
}

}  // namespace curv4
