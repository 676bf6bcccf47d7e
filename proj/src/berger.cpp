#include "curv4/berger.hpp"

#include "curv4/errors.hpp"
#include "curv4/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace curv4 {

namespace {

Triple sorted_eigenvalues(const Matrix3& block) {
  const Eigen::SelfAdjointEigenSolver<Matrix3> solver(block, Eigen::EigenvaluesOnly);
  Triple out{solver.eigenvalues()(0), solver.eigenvalues()(1), solver.eigenvalues()(2)};
  std::sort(out.begin(), out.end());
  return out;
}

Triple sample_ordered_triple(Rng& rng, double lambda, double half_width) {
  const double c = lambda / 3.0;
  const double w = half_width * lambda;
  for (;;) {
    const double x1 = rng.uniform(c - w, c + w);
    const double x2 = rng.uniform(c - w, c + w);
    const double x3 = lambda - x1 - x2;
    if (std::abs(x3 - c) <= w) {
      Triple t{x1, x2, x3};
      std::sort(t.begin(), t.end());
      return t;
    }
  }
}

}  // namespace

std::optional<std::string> BergerForm::violation(const Triple& a, const Triple& b, double lambda,
                                                 double tol) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) return "lambda > 0";
  for (int i = 0; i < 3; ++i)
    if (!std::isfinite(a[static_cast<std::size_t>(i)]) || !std::isfinite(b[static_cast<std::size_t>(i)]))
      return "finite entries";
  const double eps = tol * std::max(1.0, std::abs(lambda));
  if (a[0] > a[1] + eps || a[1] > a[2] + eps) return "a1 <= a2 <= a3";
  if (std::abs(a[0] + a[1] + a[2] - lambda) > eps) return "a1 + a2 + a3 = lambda";
  if (std::abs(b[0] + b[1] + b[2]) > eps) return "b1 + b2 + b3 = 0";
  if (std::abs(b[1] - b[0]) > a[1] - a[0] + eps) return "|b2 - b1| <= a2 - a1";
  if (std::abs(b[2] - b[0]) > a[2] - a[0] + eps) return "|b3 - b1| <= a3 - a1";
  if (std::abs(b[2] - b[1]) > a[2] - a[1] + eps) return "|b3 - b2| <= a3 - a2";
  return std::nullopt;
}

BergerForm::BergerForm(const Triple& a, const Triple& b, double lambda, double tol)
    : a_(a), b_(b), lambda_(lambda) {
  if (auto v = violation(a, b, lambda, tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "a = (" << a[0] << ", " << a[1] << ", " << a[2] << "), b = (" << b[0] << ", " << b[1]
       << ", " << b[2] << "), lambda = " << lambda;
    throw InvariantError(*v, os.str());
  }
}

BergerForm BergerForm::scaled(double c) const {
  Triple a{c * a_[0], c * a_[1], c * a_[2]};
  Triple b{c * b_[0], c * b_[1], c * b_[2]};
  return BergerForm(a, b, c * lambda_);
}

BergerForm extract_berger(const DualityBlocks& blocks, double tol) {
  const double residual = blocks.einstein_residual();
  if (residual > tol) throw NonEinsteinError(residual);
  HalfSpectra hs;
  hs.lam = sorted_eigenvalues(blocks.plus_block());
  hs.mu = sorted_eigenvalues(blocks.minus_block());
  Triple a{};
  Triple b{};
  for (std::size_t i = 0; i < 3; ++i) {
    a[i] = 0.5 * (hs.lam[i] + hs.mu[i]);
    b[i] = 0.5 * (hs.lam[i] - hs.mu[i]);
  }
  return BergerForm(a, b, blocks.scalar / 4.0, tol);
}

CurvatureOperator6 berger_to_operator(const BergerForm& bf) {
  Matrix6 m = Matrix6::Zero();
  for (int i = 0; i < 3; ++i) {
    const double ai = bf.a()[static_cast<std::size_t>(i)];
    const double bi = bf.b()[static_cast<std::size_t>(i)];
    m(i, i) = ai;
    m(i + 3, i + 3) = ai;
    m(i, i + 3) = bi;
    m(i + 3, i) = bi;
  }
  return CurvatureOperator6(m);
}

RiemannTensor4 berger_to_tensor(const BergerForm& bf) { return to_tensor(berger_to_operator(bf)); }

HalfSpectra half_spectra(const BergerForm& bf) {
  HalfSpectra hs;
  for (std::size_t i = 0; i < 3; ++i) {
    hs.lam[i] = bf.a()[i] + bf.b()[i];
    hs.mu[i] = bf.a()[i] - bf.b()[i];
  }
  return hs;
}

BergerForm from_half_spectra(const HalfSpectra& hs, double tol) {
  Triple a{};
  Triple b{};
  for (std::size_t i = 0; i < 3; ++i) {
    a[i] = 0.5 * (hs.lam[i] + hs.mu[i]);
    b[i] = 0.5 * (hs.lam[i] - hs.mu[i]);
  }
  const double lambda = 0.5 * (hs.lambda() + (hs.mu[0] + hs.mu[1] + hs.mu[2]));
  return BergerForm(a, b, lambda, tol);
}

BergerForm sample_admissible_at(std::uint64_t seed, std::uint64_t index, double lambda,
                                SamplingBox box) {
  if (!(lambda > 0.0)) throw InvariantError("lambda > 0", "sampling requires a positive Einstein constant");
  if (!(box.half_width > 0.0) || !std::isfinite(box.half_width))
    throw InvariantError("half_width > 0", "sampling box must have positive finite width");
  Rng rng(seed, index);
  HalfSpectra hs;
  hs.lam = sample_ordered_triple(rng, lambda, box.half_width);
  hs.mu = sample_ordered_triple(rng, lambda, box.half_width);
  return from_half_spectra(hs);
}

std::vector<BergerForm> sample_admissible(std::uint64_t seed, double lambda, std::size_t count,
                                          SamplingBox box) {
  std::vector<BergerForm> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_admissible_at(seed, i, lambda, box));
  return out;
}

namespace models {

BergerForm round_sphere(double lambda) {
  const double k = lambda / 3.0;
  return BergerForm({k, k, k}, {0.0, 0.0, 0.0}, lambda);
}

BergerForm complex_projective_plane(double lambda) {
  // Half spectra (0, 0, lambda) and (lambda/3, lambda/3, lambda/3).
  return BergerForm({lambda / 6.0, lambda / 6.0, 2.0 * lambda / 3.0},
                    {-lambda / 6.0, -lambda / 6.0, lambda / 3.0}, lambda);
}

BergerForm sphere_product(double lambda) {
  return BergerForm({0.0, 0.0, lambda}, {0.0, 0.0, 0.0}, lambda);
}

}  // namespace models

}  // namespace curv4
