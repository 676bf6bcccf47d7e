#pragma once

// Algebraic curvature tensors in dimension four, expressed in an orthonormal
// frame. Indices are 0-based throughout the library (the CLI reads 1-based).
//
// Conventions:
//   * R(i,j,i,j) = K(e_i, e_j); the unit round metric has R(0,1,0,1) = +1.
//   * 2-forms use the ordered, unit-norm basis
//       e01, e02, e03, e23, e31, e12
//     (1-based: e12, e13, e14, e34, e42, e23). The Hodge star swaps slot p
//     with slot p+3, so the self-dual forms are (f_p + f_{p+3})/sqrt(2).

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>

namespace curv4 {

inline constexpr int kDim = 4;
inline constexpr double kDefaultTol = 1e-9;

using Matrix3 = Eigen::Matrix3d;
using Matrix4 = Eigen::Matrix4d;
using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector4 = Eigen::Vector4d;
using Vector6 = Eigen::Matrix<double, 6, 1>;

/// Index pairs of the ordered 2-form basis.
inline constexpr std::array<std::array<int, 2>, 6> kBivectorBasis{{
    {0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}}};

class RiemannTensor4 {
 public:
  using Components = std::array<double, 256>;

  RiemannTensor4() = default;
  /// Takes the components as given; see `checked` for a validating factory.
  explicit RiemannTensor4(const Components& c) : c_(c) {}

  /// Throws InvariantError unless antisymmetry, pair symmetry and the first
  /// Bianchi identity hold within `tol`.
  static RiemannTensor4 checked(const Components& c, double tol = kDefaultTol);

  static constexpr int flat_index(int i, int j, int k, int l) noexcept {
    return ((i * kDim + j) * kDim + k) * kDim + l;
  }

  double operator()(int i, int j, int k, int l) const noexcept {
    return c_[static_cast<std::size_t>(flat_index(i, j, k, l))];
  }

  std::span<const double, 256> components() const noexcept { return c_; }

  /// Largest violation among the algebraic symmetries.
  double symmetry_residual() const;
  double max_abs() const;

  friend RiemannTensor4 operator+(const RiemannTensor4& x, const RiemannTensor4& y);
  friend RiemannTensor4 operator-(const RiemannTensor4& x, const RiemannTensor4& y);
  friend RiemannTensor4 operator*(double s, const RiemannTensor4& x);

 private:
  Components c_{};
};

/// Symmetric bilinear form on the tangent space (metric, Ricci, traceless Ricci).
class SymmetricForm2 {
 public:
  SymmetricForm2() : m_(Matrix4::Zero()) {}
  explicit SymmetricForm2(const Matrix4& m) : m_(m) {}

  static SymmetricForm2 identity() { return SymmetricForm2(Matrix4::Identity()); }

  const Matrix4& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace(); }
  double asymmetry() const { return (m_ - m_.transpose()).cwiseAbs().maxCoeff(); }
  SymmetricForm2 traceless() const {
    return SymmetricForm2(m_ - (m_.trace() / kDim) * Matrix4::Identity());
  }

 private:
  Matrix4 m_;
};

/// Rm = weyl + ric_part + scalar_part with
/// ric_part = 1/2 Ric0 (.) g and scalar_part = R/24 g (.) g.
struct StandardDecomposition {
  RiemannTensor4 weyl;
  RiemannTensor4 ric_part;
  RiemannTensor4 scalar_part;
  double scalar = 0.0;

  RiemannTensor4 reconstruct() const { return weyl + ric_part + scalar_part; }
};

/// Curvature operator on 2-forms in the fixed basis; entry (p, q) is
/// R(pair_p, pair_q).
class CurvatureOperator6 {
 public:
  CurvatureOperator6() : m_(Matrix6::Zero()) {}
  explicit CurvatureOperator6(const Matrix6& m) : m_(m) {}

  const Matrix6& matrix() const noexcept { return m_; }
  double trace() const { return m_.trace(); }
  double asymmetry() const { return (m_ - m_.transpose()).cwiseAbs().maxCoeff(); }
  /// Ascending.
  std::array<double, 6> eigenvalues() const;

 private:
  Matrix6 m_;
};

/// Operator in the (self-dual, anti-self-dual) basis:
///   [ R/12 + W+    off_diag  ]
///   [ off_diag^T   R/12 + W- ]
struct DualityBlocks {
  double scalar = 0.0;
  Matrix3 w_plus = Matrix3::Zero();
  Matrix3 w_minus = Matrix3::Zero();
  Matrix3 off_diag = Matrix3::Zero();

  Matrix3 plus_block() const { return w_plus + (scalar / 12.0) * Matrix3::Identity(); }
  Matrix3 minus_block() const { return w_minus + (scalar / 12.0) * Matrix3::Identity(); }
  double einstein_residual() const { return off_diag.cwiseAbs().maxCoeff(); }
};

SymmetricForm2 ricci_contract(const RiemannTensor4& rm);
double scalar_curvature(const RiemannTensor4& rm);

/// (h (.) k)_{ijkl} = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il
RiemannTensor4 kulkarni_nomizu(const SymmetricForm2& h, const SymmetricForm2& k);

StandardDecomposition standard_decompose(const RiemannTensor4& rm);

CurvatureOperator6 to_operator(const RiemannTensor4& rm);
/// Inverse of to_operator. The result satisfies the first Bianchi identity
/// only if R(01,23) + R(02,31) + R(03,12) vanishes.
RiemannTensor4 to_tensor(const CurvatureOperator6& op);

/// Orthogonal change of basis to the self-dual / anti-self-dual splitting.
const Matrix6& duality_basis();
/// Hodge star in the fixed 2-form basis.
const Matrix6& hodge_star();

DualityBlocks duality_blocks(const CurvatureOperator6& op);

/// Max-entry distance of Ric from (R/4) g.
double einstein_residual(const RiemannTensor4& rm);
/// Einstein constant R/4 when Ric = (R/4) g holds entrywise within tol.
std::optional<double> is_einstein(const RiemannTensor4& rm, double tol = kDefaultTol);

/// Components in the frame given by the columns of `frame`:
/// R'(a,b,c,d) = R(frame e_a, frame e_b, frame e_c, frame e_d).
RiemannTensor4 rotate(const RiemannTensor4& rm, const Matrix4& frame);

/// Plucker coordinates of x ^ y in the fixed 2-form basis.
Vector6 wedge(const Vector4& x, const Vector4& y);
double sectional_curvature(const RiemannTensor4& rm, const Vector4& x, const Vector4& y);

/// Constant-curvature tensor K (g (.) g) / 2.
RiemannTensor4 constant_curvature_tensor(double sectional);

}  // namespace curv4
