#pragma once

// Berger normal form of an Einstein curvature operator:
//
//   R = [ A  B ]     A = diag(a1, a2, a3),  B = diag(b1, b2, b3)
//       [ B  A ]
//
// in the fixed 2-form basis. a1 and a3 are the extreme sectional curvatures,
// a1 + a2 + a3 = lambda, and b = (R_1234, R_1342, R_1423) in 1-based indices.
// The half operators R+ and R- have eigenvalues lam_i = a_i + b_i and
// mu_i = a_i - b_i, both ascending.

#include "curv4/tensor_algebra.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace curv4 {

using Triple = std::array<double, 3>;

/// Eigenvalues of the half curvature operators, each ascending.
struct HalfSpectra {
  Triple lam{};  ///< self-dual block R/12 + W+
  Triple mu{};   ///< anti-self-dual block R/12 + W-

  double lambda() const { return lam[0] + lam[1] + lam[2]; }
};

class BergerForm {
 public:
  /// Validates every invariant; throws InvariantError naming the first one
  /// violated. Tolerances scale with max(1, |lambda|).
  BergerForm(const Triple& a, const Triple& b, double lambda, double tol = kDefaultTol);

  /// Name of the first violated invariant, if any.
  static std::optional<std::string> violation(const Triple& a, const Triple& b, double lambda,
                                              double tol = kDefaultTol);

  const Triple& a() const noexcept { return a_; }
  const Triple& b() const noexcept { return b_; }
  double lambda() const noexcept { return lambda_; }

  /// Multiplies a, b and lambda by c > 0.
  BergerForm scaled(double c) const;
  /// Rescaled to lambda = 1.
  BergerForm normalized() const { return scaled(1.0 / lambda_); }

 private:
  Triple a_;
  Triple b_;
  double lambda_;
};

BergerForm extract_berger(const DualityBlocks& blocks, double tol = kDefaultTol);

CurvatureOperator6 berger_to_operator(const BergerForm& bf);
RiemannTensor4 berger_to_tensor(const BergerForm& bf);

HalfSpectra half_spectra(const BergerForm& bf);
BergerForm from_half_spectra(const HalfSpectra& hs, double tol = kDefaultTol);

/// Box for sampled half-spectra: every eigenvalue lies within
/// half_width * lambda of lambda / 3.
struct SamplingBox {
  double half_width = 2.0;
};

/// Sample `index` of the stream identified by `seed`. lam and mu are drawn
/// independently, uniformly on {sum = lambda} within the box, then sorted.
BergerForm sample_admissible_at(std::uint64_t seed, std::uint64_t index, double lambda,
                                SamplingBox box = {});

/// Samples 0..count-1 of the stream.
std::vector<BergerForm> sample_admissible(std::uint64_t seed, double lambda, std::size_t count,
                                          SamplingBox box = {});

/// Reference Einstein spaces, Ric = lambda g.
namespace models {
BergerForm round_sphere(double lambda = 1.0);
/// Fubini-Study, orientation with W- = 0.
BergerForm complex_projective_plane(double lambda = 1.0);
BergerForm sphere_product(double lambda = 1.0);
}  // namespace models

}  // namespace curv4
