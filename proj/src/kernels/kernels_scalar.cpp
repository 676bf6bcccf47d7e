#include "curv4/kernels.hpp"

#include <cmath>

namespace curv4::kernels::detail {

namespace {

// Plucker coordinates in the fixed basis e01, e02, e03, e23, e31, e12.
inline void wedge(const double x[4], const double y[4], double w[6]) {
  w[0] = x[0] * y[1] - x[1] * y[0];
  w[1] = x[0] * y[2] - x[2] * y[0];
  w[2] = x[0] * y[3] - x[3] * y[0];
  w[3] = x[2] * y[3] - x[3] * y[2];
  w[4] = x[3] * y[1] - x[1] * y[3];
  w[5] = x[1] * y[2] - x[2] * y[1];
}

inline double bilinear(const double* m, const double u[6], const double v[6]) {
  double s = 0.0;
  for (int p = 0; p < 6; ++p) {
    double t = 0.0;
    for (int q = 0; q < 6; ++q) t = t + m[p * 6 + q] * v[q];
    s = s + u[p] * t;
  }
  return s;
}

inline void load4(const double* base, std::size_t n, std::size_t i, double v[4]) {
  for (std::size_t c = 0; c < 4; ++c) v[c] = base[c * n + i];
}

}  // namespace

void sectional_scalar(const PackedOperator& op, const double* xs, const double* ys, double* out,
                      std::size_t begin, std::size_t end, std::size_t n) {
  for (std::size_t i = begin; i < end; ++i) {
    double x[4], y[4], w[6];
    load4(xs, n, i, x);
    load4(ys, n, i, y);
    wedge(x, y, w);
    double norm2 = 0.0;
    for (int p = 0; p < 6; ++p) norm2 = norm2 + w[p] * w[p];
    out[i] = bilinear(op.m, w, w) / norm2;
  }
}

void isotropic_scalar(const PackedOperator& op, const double* frames, double* out,
                      std::size_t begin, std::size_t end, std::size_t n) {
  for (std::size_t i = begin; i < end; ++i) {
    double f[4][4];
    for (std::size_t a = 0; a < 4; ++a) load4(frames + a * 4 * n, n, i, f[a]);
    double w13[6], w14[6], w23[6], w24[6], w12[6], w34[6];
    wedge(f[0], f[2], w13);
    wedge(f[0], f[3], w14);
    wedge(f[1], f[2], w23);
    wedge(f[1], f[3], w24);
    wedge(f[0], f[1], w12);
    wedge(f[2], f[3], w34);
    const double sum = bilinear(op.m, w13, w13) + bilinear(op.m, w14, w14) +
                       bilinear(op.m, w23, w23) + bilinear(op.m, w24, w24);
    out[i] = sum - 2.0 * std::fabs(bilinear(op.m, w12, w34));
  }
}

}  // namespace curv4::kernels::detail
