#include "curv4/tensor_algebra.hpp"

#include "curv4/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace curv4 {

namespace {

using Components = RiemannTensor4::Components;

constexpr std::size_t at(int i, int j, int k, int l) {
  return static_cast<std::size_t>(RiemannTensor4::flat_index(i, j, k, l));
}

}  // namespace

RiemannTensor4 RiemannTensor4::checked(const Components& c, double tol) {
  RiemannTensor4 rm(c);
  const double residual = rm.symmetry_residual();
  if (residual > tol * std::max(1.0, rm.max_abs())) {
    std::ostringstream os;
    os << "symmetry residual " << residual << " exceeds tolerance " << tol;
    throw InvariantError("curvature symmetries", os.str());
  }
  return rm;
}

double RiemannTensor4::symmetry_residual() const {
  double worst = 0.0;
  const auto& r = *this;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) {
          const double v = r(i, j, k, l);
          worst = std::max(worst, std::abs(v + r(j, i, k, l)));
          worst = std::max(worst, std::abs(v + r(i, j, l, k)));
          worst = std::max(worst, std::abs(v - r(k, l, i, j)));
          worst = std::max(worst, std::abs(v + r(i, k, l, j) + r(i, l, j, k)));
        }
  return worst;
}

double RiemannTensor4::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

RiemannTensor4 operator+(const RiemannTensor4& x, const RiemannTensor4& y) {
  Components c{};
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = x.c_[n] + y.c_[n];
  return RiemannTensor4(c);
}

RiemannTensor4 operator-(const RiemannTensor4& x, const RiemannTensor4& y) {
  Components c{};
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = x.c_[n] - y.c_[n];
  return RiemannTensor4(c);
}

RiemannTensor4 operator*(double s, const RiemannTensor4& x) {
  Components c{};
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = s * x.c_[n];
  return RiemannTensor4(c);
}

std::array<double, 6> CurvatureOperator6::eigenvalues() const {
  const Eigen::SelfAdjointEigenSolver<Matrix6> solver(m_, Eigen::EigenvaluesOnly);
  std::array<double, 6> out{};
  for (int p = 0; p < 6; ++p) out[static_cast<std::size_t>(p)] = solver.eigenvalues()(p);
  return out;
}

SymmetricForm2 ricci_contract(const RiemannTensor4& rm) {
  Matrix4 ric = Matrix4::Zero();
  for (int j = 0; j < kDim; ++j)
    for (int l = 0; l < kDim; ++l) {
      double s = 0.0;
      for (int i = 0; i < kDim; ++i) s += rm(i, j, i, l);
      ric(j, l) = s;
    }
  return SymmetricForm2(ric);
}

double scalar_curvature(const RiemannTensor4& rm) { return ricci_contract(rm).trace(); }

RiemannTensor4 kulkarni_nomizu(const SymmetricForm2& h, const SymmetricForm2& k) {
  Components c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b)
          c[at(i, j, a, b)] = h(i, a) * k(j, b) + h(j, b) * k(i, a) - h(i, b) * k(j, a) -
                              h(j, a) * k(i, b);
  return RiemannTensor4(c);
}

StandardDecomposition standard_decompose(const RiemannTensor4& rm) {
  const SymmetricForm2 ric = ricci_contract(rm);
  const SymmetricForm2 g = SymmetricForm2::identity();
  StandardDecomposition d;
  d.scalar = ric.trace();
  // n = 4: 1/(n-2) = 1/2 and R/(2n(n-1)) = R/24.
  d.ric_part = 0.5 * kulkarni_nomizu(ric.traceless(), g);
  d.scalar_part = (d.scalar / 24.0) * kulkarni_nomizu(g, g);
  d.weyl = rm - d.ric_part - d.scalar_part;
  return d;
}

CurvatureOperator6 to_operator(const RiemannTensor4& rm) {
  Matrix6 m;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      const auto [i, j] = kBivectorBasis[static_cast<std::size_t>(p)];
      const auto [k, l] = kBivectorBasis[static_cast<std::size_t>(q)];
      m(p, q) = rm(i, j, k, l);
    }
  return CurvatureOperator6(m);
}

RiemannTensor4 to_tensor(const CurvatureOperator6& op) {
  Components c{};
  const Matrix6& m = op.matrix();
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      const auto [i, j] = kBivectorBasis[static_cast<std::size_t>(p)];
      const auto [k, l] = kBivectorBasis[static_cast<std::size_t>(q)];
      const double v = m(p, q);
      c[at(i, j, k, l)] = v;
      c[at(j, i, k, l)] = -v;
      c[at(i, j, l, k)] = -v;
      c[at(j, i, l, k)] = v;
    }
  return RiemannTensor4(c);
}

const Matrix6& duality_basis() {
  static const Matrix6 basis = [] {
    Matrix6 p = Matrix6::Zero();
    const double s = 1.0 / std::numbers::sqrt2;
    for (int i = 0; i < 3; ++i) {
      p(i, i) = s;
      p(i, i + 3) = s;
      p(i + 3, i) = s;
      p(i + 3, i + 3) = -s;
    }
    return p;
  }();
  return basis;
}

const Matrix6& hodge_star() {
  static const Matrix6 star = [] {
    Matrix6 s = Matrix6::Zero();
    for (int i = 0; i < 3; ++i) {
      s(i, i + 3) = 1.0;
      s(i + 3, i) = 1.0;
    }
    return s;
  }();
  return star;
}

DualityBlocks duality_blocks(const CurvatureOperator6& op) {
  const Matrix6& p = duality_basis();
  const Matrix6 q = p * op.matrix() * p.transpose();
  DualityBlocks blocks;
  blocks.scalar = 2.0 * op.trace();
  const Matrix3 shift = (blocks.scalar / 12.0) * Matrix3::Identity();
  blocks.w_plus = q.topLeftCorner<3, 3>() - shift;
  blocks.w_minus = q.bottomRightCorner<3, 3>() - shift;
  blocks.off_diag = q.topRightCorner<3, 3>();
  return blocks;
}

double einstein_residual(const RiemannTensor4& rm) {
  const SymmetricForm2 ric = ricci_contract(rm);
  return ric.traceless().matrix().cwiseAbs().maxCoeff();
}

std::optional<double> is_einstein(const RiemannTensor4& rm, double tol) {
  const SymmetricForm2 ric = ricci_contract(rm);
  if (ric.traceless().matrix().cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return ric.trace() / kDim;
}

RiemannTensor4 rotate(const RiemannTensor4& rm, const Matrix4& frame) {
  // Contract one slot at a time; each pass is 4^5 multiply-adds.
  Components src{};
  std::copy(rm.components().begin(), rm.components().end(), src.begin());
  Components dst{};
  for (int slot = 0; slot < 4; ++slot) {
    dst.fill(0.0);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l) {
            std::array<int, 4> idx{i, j, k, l};
            double s = 0.0;
            for (int m = 0; m < kDim; ++m) {
              std::array<int, 4> from = idx;
              from[static_cast<std::size_t>(slot)] = m;
              s += frame(m, idx[static_cast<std::size_t>(slot)]) *
                   src[at(from[0], from[1], from[2], from[3])];
            }
            dst[at(i, j, k, l)] = s;
          }
    src = dst;
  }
  return RiemannTensor4(src);
}

Vector6 wedge(const Vector4& x, const Vector4& y) {
  Vector6 w;
  for (int p = 0; p < 6; ++p) {
    const auto [i, j] = kBivectorBasis[static_cast<std::size_t>(p)];
    w(p) = x(i) * y(j) - x(j) * y(i);
  }
  return w;
}

double sectional_curvature(const RiemannTensor4& rm, const Vector4& x, const Vector4& y) {
  double num = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) num += x(i) * y(j) * x(k) * y(l) * rm(i, j, k, l);
  const double area2 = x.squaredNorm() * y.squaredNorm() - x.dot(y) * x.dot(y);
  return num / area2;
}

RiemannTensor4 constant_curvature_tensor(double sectional) {
  const SymmetricForm2 g = SymmetricForm2::identity();
  return (0.5 * sectional) * kulkarni_nomizu(g, g);
}

}  // namespace curv4
