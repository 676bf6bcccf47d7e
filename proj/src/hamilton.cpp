#include "curv4/hamilton.hpp"

#include <stdexcept>

namespace curv4 {

namespace {

double b_tensor(const RiemannTensor4& rm, int i, int j, int k, int l) {
  double s = 0.0;
  for (int m = 0; m < kDim; ++m)
    for (int p = 0; p < kDim; ++p) s += rm(i, m, j, p) * rm(k, m, l, p);
  return s;
}

}  // namespace

double b_combination(const RiemannTensor4& rm, int i, int j, int k, int l) {
  for (int x : {i, j, k, l})
    if (x < 0 || x >= kDim) throw std::out_of_range("b_combination: index out of range");
  return 2.0 * (b_tensor(rm, i, j, k, l) - b_tensor(rm, i, j, l, k) + b_tensor(rm, i, k, j, l) -
                b_tensor(rm, i, l, j, k));
}

Matrix6 quadratic_operator(const RiemannTensor4& rm) {
  Matrix6 q;
  for (int p = 0; p < 6; ++p)
    for (int r = 0; r < 6; ++r) {
      const auto& x = kBivectorBasis[static_cast<std::size_t>(p)];
      const auto& y = kBivectorBasis[static_cast<std::size_t>(r)];
      q(p, r) = 0.5 * b_combination(rm, x[0], x[1], y[0], y[1]);
    }
  return q;
}

Triple half_quadratic(const Triple& l) {
  return {l[0] * l[0] + 2.0 * l[1] * l[2], l[1] * l[1] + 2.0 * l[0] * l[2],
          l[2] * l[2] + 2.0 * l[0] * l[1]};
}

QuadraticTerms quadratic_terms(const BergerForm& bf) {
  const auto& a = bf.a();
  const auto& b = bf.b();
  QuadraticTerms t;
  t.q12 = 2.0 * (a[0] * a[0] + b[0] * b[0] + 2.0 * a[1] * a[2] + 2.0 * b[1] * b[2]);
  t.q13 = 2.0 * (a[1] * a[1] + b[1] * b[1] + 2.0 * a[0] * a[2] + 2.0 * b[0] * b[2]);
  t.q14 = 2.0 * (a[2] * a[2] + b[2] * b[2] + 2.0 * a[0] * a[1] + 2.0 * b[0] * b[1]);
  const HalfSpectra hs = half_spectra(bf);
  t.q_plus = half_quadratic(hs.lam);
  t.q_minus = half_quadratic(hs.mu);
  return t;
}

double stationarity_margin_min_sectional(const Triple& a, const Triple& b, double lambda) {
  return lambda * a[0] - (a[0] * a[0] + b[0] * b[0] + 2.0 * (a[1] * a[2] + b[1] * b[2]));
}

double stationarity_margin_min_sectional(const BergerForm& bf) {
  return stationarity_margin_min_sectional(bf.a(), bf.b(), bf.lambda());
}

namespace {

double three_sum_margin(const Triple& lam, const Triple& mu, double lambda) {
  return lambda * (mu[0] - lam[2]) -
         (mu[0] * mu[0] + 2.0 * mu[1] * mu[2] - lam[2] * lam[2] - 2.0 * lam[0] * lam[1]);
}

}  // namespace

double stationarity_margin_three_sum(const HalfSpectra& hs) {
  return three_sum_margin(hs.lam, hs.mu, hs.lambda());
}

double stationarity_margin_three_sum_mirror(const HalfSpectra& hs) {
  return three_sum_margin(hs.mu, hs.lam, hs.lambda());
}

double stationarity_margin_half_min(const Triple& l, double lambda) {
  return lambda * l[0] - (l[0] * l[0] + 2.0 * l[1] * l[2]);
}

}  // namespace curv4
