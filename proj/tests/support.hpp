#pragma once

#include "curv4/random.hpp"
#include "curv4/tensor_algebra.hpp"

#include <array>
#include <bit>
#include <limits>

namespace curv4::test {

/// R_ijkl = A_ik A_jl - A_il A_jk for symmetric A; satisfies every curvature
/// symmetry without going through the library.
inline RiemannTensor4 gauss_tensor(const Matrix4& a) {
  RiemannTensor4::Components c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          c[static_cast<std::size_t>(RiemannTensor4::flat_index(i, j, k, l))] =
              a(i, k) * a(j, l) - a(i, l) * a(j, k);
  return RiemannTensor4(c);
}

inline Matrix4 random_symmetric(Rng& rng) {
  Matrix4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) a(i, j) = a(j, i) = rng.normal();
  return a;
}

/// Signed sum of four Gauss tensors: a generic algebraic curvature tensor.
inline RiemannTensor4 random_tensor(std::uint64_t seed, std::uint64_t index) {
  Rng rng(seed, index);
  RiemannTensor4 r;
  for (int t = 0; t < 4; ++t) {
    const double s = rng.uniform() < 0.5 ? -1.0 : 1.0;
    r = r + s * gauss_tensor(random_symmetric(rng));
  }
  return r;
}

inline RiemannTensor4 sphere_tensor(double k) {
  return k * gauss_tensor(Matrix4::Identity());
}

inline RiemannTensor4 sphere_product_tensor() {
  Matrix4 p = Matrix4::Zero();
  p(0, 0) = p(1, 1) = 1.0;
  Matrix4 q = Matrix4::Zero();
  q(2, 2) = q(3, 3) = 1.0;
  return gauss_tensor(p) + gauss_tensor(q);
}

/// Minimum over all k-element subsets, by enumeration.
inline double min_subset_sum(const std::array<double, 6>& v, int k) {
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < 64; ++mask) {
    if (std::popcount(mask) != k) continue;
    double s = 0.0;
    for (unsigned i = 0; i < 6; ++i)
      if (mask & (1u << i)) s += v[i];
    best = std::min(best, s);
  }
  return best;
}

}  // namespace curv4::test
