#pragma once

// Batch evaluation of curvature quadratic forms over many 2-planes or
// orthonormal frames. Each kernel has a scalar reference implementation and,
// on x86-64, an AVX2 variant selected at runtime. Both variants perform the
// same operations in the same order, so results agree bit for bit.
//
// Batches are structure-of-arrays: component c of item i is data[c * n + i].

#include "curv4/tensor_algebra.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace curv4::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

/// Best variant supported by this build and CPU.
Isa detected_isa();
/// detected_isa() unless overridden.
Isa active_isa();
/// Forces a variant (nullopt restores detection). Requesting an unsupported
/// variant falls back to scalar.
void set_isa_override(std::optional<Isa> isa);

/// Row-major copy of the operator matrix, the layout kernels consume.
struct PackedOperator {
  double m[36];
  explicit PackedOperator(const Matrix6& op);
};

/// Sectional curvature R(x,y,x,y) / |x ^ y|^2 for each plane (x_i, y_i).
/// `xs` and `ys` hold 4 * n values; `out` holds n.
void sectional_batch(const PackedOperator& op, std::span<const double> xs,
                     std::span<const double> ys, std::span<double> out, Isa isa);
void sectional_batch(const PackedOperator& op, std::span<const double> xs,
                     std::span<const double> ys, std::span<double> out);

/// Isotropic curvature of each orthonormal frame (f1, f2, f3, f4):
///   R_1313 + R_1414 + R_2323 + R_2424 - 2 |R_1234|.
/// `frames` holds 16 * n values, vector a component c at (4a + c) * n + i.
void isotropic_batch(const PackedOperator& op, std::span<const double> frames,
                     std::span<double> out, Isa isa);
void isotropic_batch(const PackedOperator& op, std::span<const double> frames,
                     std::span<double> out);

namespace detail {
void sectional_scalar(const PackedOperator& op, const double* xs, const double* ys, double* out,
                      std::size_t begin, std::size_t end, std::size_t n);
void isotropic_scalar(const PackedOperator& op, const double* frames, double* out,
                      std::size_t begin, std::size_t end, std::size_t n);
#if defined(CURV4_HAVE_AVX2)
void sectional_avx2(const PackedOperator& op, const double* xs, const double* ys, double* out,
                    std::size_t n);
void isotropic_avx2(const PackedOperator& op, const double* frames, double* out, std::size_t n);
#endif
}  // namespace detail

}  // namespace curv4::kernels
