#pragma once

// Quadratic part of Hamilton's identity for Einstein metrics,
//
//   Delta R_ijkl + 2 (B_ijkl - B_ijlk + B_ikjl - B_iljk) = 2 lambda R_ijkl,
//   B_ijkl = sum_{m,p} R_imjp R_kmlp,
//
// and the algebraic sign conditions it gives at a minimum point of a
// curvature quantity, where the Laplacian term is nonnegative.

#include "curv4/berger.hpp"

namespace curv4 {

/// 2 (B_ijkl - B_ijlk + B_ikjl - B_iljk), 0-based indices.
/// Throws std::out_of_range for indices outside 0..3.
double b_combination(const RiemannTensor4& rm, int i, int j, int k, int l);

/// Quadratic term as a form on 2-forms: Q(p, q) = b_combination(pair_p, pair_q) / 2,
/// so that Delta R(w, w) + Q(w, w) = lambda R(w, w) for unit 2-forms w.
Matrix6 quadratic_operator(const RiemannTensor4& rm);

struct QuadraticTerms {
  double q12 = 0.0;  ///< 2 (a1^2 + b1^2 + 2 a2 a3 + 2 b2 b3)
  double q13 = 0.0;  ///< 2 (a2^2 + b2^2 + 2 a1 a3 + 2 b1 b3)
  double q14 = 0.0;  ///< 2 (a3^2 + b3^2 + 2 a1 a2 + 2 b1 b2)
  Triple q_plus{};   ///< lam_i^2 + 2 lam_j lam_k
  Triple q_minus{};  ///< mu_i^2 + 2 mu_j mu_k
};

QuadraticTerms quadratic_terms(const BergerForm& bf);

/// l_i^2 + 2 l_j l_k for each i.
Triple half_quadratic(const Triple& l);

/// lambda a1 - (a1^2 + b1^2 + 2 (a2 a3 + b2 b3)); nonnegative at a point
/// where the sectional curvature attains its global minimum.
double stationarity_margin_min_sectional(const BergerForm& bf);
double stationarity_margin_min_sectional(const Triple& a, const Triple& b, double lambda);

/// lambda (mu1 - lam3) - (mu1^2 + 2 mu2 mu3 - lam3^2 - 2 lam1 lam2);
/// nonnegative where lambda + mu1 - lam3 attains its global minimum.
double stationarity_margin_three_sum(const HalfSpectra& hs);
/// Same with the roles of lam and mu exchanged.
double stationarity_margin_three_sum_mirror(const HalfSpectra& hs);

/// lambda l1 - (l1^2 + 2 l2 l3) for one half spectrum l with trace lambda;
/// nonnegative where the smallest eigenvalue of that half attains its minimum.
double stationarity_margin_half_min(const Triple& l, double lambda);

}  // namespace curv4
