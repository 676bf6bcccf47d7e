#include "curv4/kernels.hpp"

#include <immintrin.h>

namespace curv4::kernels::detail {

namespace {

struct V4 {
  __m256d c[4];
};

inline V4 load(const double* base, std::size_t n, std::size_t i) {
  V4 v;
  for (std::size_t c = 0; c < 4; ++c) v.c[c] = _mm256_loadu_pd(base + c * n + i);
  return v;
}

inline __m256d cross(__m256d a, __m256d b, __m256d c, __m256d d) {
  return _mm256_sub_pd(_mm256_mul_pd(a, b), _mm256_mul_pd(c, d));
}

inline void wedge(const V4& x, const V4& y, __m256d w[6]) {
  w[0] = cross(x.c[0], y.c[1], x.c[1], y.c[0]);
  w[1] = cross(x.c[0], y.c[2], x.c[2], y.c[0]);
  w[2] = cross(x.c[0], y.c[3], x.c[3], y.c[0]);
  w[3] = cross(x.c[2], y.c[3], x.c[3], y.c[2]);
  w[4] = cross(x.c[3], y.c[1], x.c[1], y.c[3]);
  w[5] = cross(x.c[1], y.c[2], x.c[2], y.c[1]);
}

inline __m256d bilinear(const __m256d m[36], const __m256d u[6], const __m256d v[6]) {
  __m256d s = _mm256_setzero_pd();
  for (int p = 0; p < 6; ++p) {
    __m256d t = _mm256_setzero_pd();
    for (int q = 0; q < 6; ++q) t = _mm256_add_pd(t, _mm256_mul_pd(m[p * 6 + q], v[q]));
    s = _mm256_add_pd(s, _mm256_mul_pd(u[p], t));
  }
  return s;
}

inline void broadcast(const PackedOperator& op, __m256d m[36]) {
  for (int p = 0; p < 36; ++p) m[p] = _mm256_set1_pd(op.m[p]);
}

}  // namespace

void sectional_avx2(const PackedOperator& op, const double* xs, const double* ys, double* out,
                    std::size_t n) {
  __m256d m[36];
  broadcast(op, m);
  const std::size_t body = n - n % 4;
  for (std::size_t i = 0; i < body; i += 4) {
    const V4 x = load(xs, n, i);
    const V4 y = load(ys, n, i);
    __m256d w[6];
    wedge(x, y, w);
    __m256d norm2 = _mm256_setzero_pd();
    for (int p = 0; p < 6; ++p) norm2 = _mm256_add_pd(norm2, _mm256_mul_pd(w[p], w[p]));
    _mm256_storeu_pd(out + i, _mm256_div_pd(bilinear(m, w, w), norm2));
  }
  sectional_scalar(op, xs, ys, out, body, n, n);
}

void isotropic_avx2(const PackedOperator& op, const double* frames, double* out, std::size_t n) {
  __m256d m[36];
  broadcast(op, m);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const std::size_t body = n - n % 4;
  for (std::size_t i = 0; i < body; i += 4) {
    V4 f[4];
    for (std::size_t a = 0; a < 4; ++a) f[a] = load(frames + a * 4 * n, n, i);
    __m256d w13[6], w14[6], w23[6], w24[6], w12[6], w34[6];
    wedge(f[0], f[2], w13);
    wedge(f[0], f[3], w14);
    wedge(f[1], f[2], w23);
    wedge(f[1], f[3], w24);
    wedge(f[0], f[1], w12);
    wedge(f[2], f[3], w34);
    __m256d sum = _mm256_add_pd(bilinear(m, w13, w13), bilinear(m, w14, w14));
    sum = _mm256_add_pd(sum, bilinear(m, w23, w23));
    sum = _mm256_add_pd(sum, bilinear(m, w24, w24));
    const __m256d cross_term = _mm256_andnot_pd(sign_mask, bilinear(m, w12, w34));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(sum, _mm256_mul_pd(two, cross_term)));
  }
  isotropic_scalar(op, frames, out, body, n, n);
}

}  // namespace curv4::kernels::detail
