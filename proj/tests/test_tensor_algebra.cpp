#include "curv4/errors.hpp"
#include "curv4/tensor_algebra.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curv4;

namespace {

double max_abs(const Matrix4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(RiemannTensor4, GaussTensorsSatisfyAllSymmetries) {
  for (std::uint64_t i = 0; i < 50; ++i) EXPECT_LT(test::random_tensor(3, i).symmetry_residual(), 1e-12);
}

TEST(RiemannTensor4, CheckedRejectsBianchiViolation) {
  RiemannTensor4::Components c{};
  auto set = [&](int i, int j, int k, int l, double v) {
    c[static_cast<std::size_t>(RiemannTensor4::flat_index(i, j, k, l))] = v;
  };
  // R(0,1,2,3) alone, with its antisymmetry/pair orbit, breaks the first Bianchi identity.
  for (auto [i, j, k, l, s] : {std::tuple{0, 1, 2, 3, 1.0}, {1, 0, 2, 3, -1.0}, {0, 1, 3, 2, -1.0},
                               {1, 0, 3, 2, 1.0}, {2, 3, 0, 1, 1.0}, {3, 2, 0, 1, -1.0},
                               {2, 3, 1, 0, -1.0}, {3, 2, 1, 0, 1.0}})
    set(i, j, k, l, s);
  EXPECT_THROW(RiemannTensor4::checked(c), InvariantError);
}

TEST(RicciContract, RoundSphere) {
  const SymmetricForm2 ric = ricci_contract(test::sphere_tensor(1.0 / 3.0));
  EXPECT_LT(max_abs(ric.matrix() - Matrix4::Identity()), 1e-15);
}

TEST(RicciContract, ZeroTensor) {
  EXPECT_EQ(max_abs(ricci_contract(RiemannTensor4{}).matrix()), 0.0);
}

TEST(RicciContract, SphereProductByHand) {
  // Ric(j,l) = sum_i R(i,j,i,l): only R(0,1,0,1) feeds Ric(1,1) and Ric(0,0), and
  // R(2,3,2,3) feeds Ric(2,2), Ric(3,3).
  const SymmetricForm2 ric = ricci_contract(test::sphere_product_tensor());
  EXPECT_LT(max_abs(ric.matrix() - Matrix4::Identity()), 1e-15);
  EXPECT_DOUBLE_EQ(scalar_curvature(test::sphere_product_tensor()), 4.0);
}

TEST(KulkarniNomizu, MetricSquared) {
  const RiemannTensor4 gg = kulkarni_nomizu(SymmetricForm2::identity(), SymmetricForm2::identity());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) {
        EXPECT_DOUBLE_EQ(gg(i, j, i, j), 2.0);
      }
  EXPECT_LT(gg.symmetry_residual(), 1e-15);
}

TEST(KulkarniNomizu, ZeroForm) {
  EXPECT_EQ(kulkarni_nomizu(SymmetricForm2(), SymmetricForm2::identity()).max_abs(), 0.0);
}

TEST(KulkarniNomizu, ScalarTermIsRoundSphere) {
  // R / (2 n (n - 1)) g (.) g with R = 12 K reproduces constant curvature K.
  const double k = 1.0 / 3.0;
  const RiemannTensor4 scalar_term =
      (12.0 * k / 24.0) * kulkarni_nomizu(SymmetricForm2::identity(), SymmetricForm2::identity());
  EXPECT_LT((scalar_term - test::sphere_tensor(k)).max_abs(), 1e-15);
  EXPECT_LT((constant_curvature_tensor(k) - test::sphere_tensor(k)).max_abs(), 1e-15);
}

TEST(KulkarniNomizu, ProductOfRandomFormsIsCurvatureTensor) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const SymmetricForm2 h(test::random_symmetric(rng));
    const SymmetricForm2 k(test::random_symmetric(rng));
    EXPECT_LT(kulkarni_nomizu(h, k).symmetry_residual(), 1e-12);
  }
}

TEST(StandardDecompose, RoundSphere) {
  const StandardDecomposition sd = standard_decompose(test::sphere_tensor(1.0 / 3.0));
  EXPECT_LT(sd.weyl.max_abs(), 1e-15);
  EXPECT_LT(sd.ric_part.max_abs(), 1e-15);
  EXPECT_NEAR(sd.scalar, 4.0, 1e-15);
}

TEST(StandardDecompose, SphereProduct) {
  const RiemannTensor4 rm = test::sphere_product_tensor();
  const StandardDecomposition sd = standard_decompose(rm);
  EXPECT_GT(sd.weyl.max_abs(), 0.1);
  EXPECT_LT(sd.ric_part.max_abs(), 1e-15);
  EXPECT_NEAR(sd.scalar, 4.0, 1e-15);
  EXPECT_LT((rm - (1.0 / 3.0) * test::gauss_tensor(Matrix4::Identity()) - sd.weyl).max_abs(), 1e-15);
}

TEST(StandardDecompose, RandomTensorsReconstructAndWeylIsTraceless) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const RiemannTensor4 rm = test::random_tensor(11, i);
    const StandardDecomposition sd = standard_decompose(rm);
    EXPECT_LT((rm - sd.reconstruct()).max_abs(), 1e-10);
    EXPECT_LT(max_abs(ricci_contract(sd.weyl).matrix()), 1e-10);
  }
}

TEST(ToOperator, RoundSphere) {
  const Matrix6 m = to_operator(test::sphere_tensor(1.0 / 3.0)).matrix();
  EXPECT_LT((m - Matrix6::Identity() / 3.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ToOperator, SphereProduct) {
  Matrix6 expected = Matrix6::Zero();
  expected(0, 0) = expected(3, 3) = 1.0;
  EXPECT_EQ(to_operator(test::sphere_product_tensor()).matrix(), expected);
}

TEST(ToOperator, SymmetricWithTraceHalfScalar) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const RiemannTensor4 rm = test::random_tensor(13, i);
    const CurvatureOperator6 op = to_operator(rm);
    EXPECT_LT(op.asymmetry(), 1e-12);
    EXPECT_NEAR(op.trace(), scalar_curvature(rm) / 2.0, 1e-10);
    EXPECT_LT((to_tensor(op) - rm).max_abs(), 1e-12);
  }
}

TEST(DualityBlocks, RoundSphere) {
  const DualityBlocks b = duality_blocks(to_operator(test::sphere_tensor(1.0 / 3.0)));
  EXPECT_NEAR(b.scalar, 4.0, 1e-15);
  EXPECT_LT(b.w_plus.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(b.w_minus.cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(b.off_diag.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DualityBlocks, SphereProduct) {
  const DualityBlocks b = duality_blocks(to_operator(test::sphere_product_tensor()));
  // (e12 + e34)/sqrt2 has eigenvalue 1 = R/12 + 2/3.
  const Eigen::Vector3d expected(2.0 / 3.0, -1.0 / 3.0, -1.0 / 3.0);
  EXPECT_LT((b.w_plus.diagonal() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((b.w_minus.diagonal() - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(b.einstein_residual(), 1e-15);
}

TEST(DualityBlocks, NonEinsteinHasOffDiagonal) {
  Matrix4 h = Matrix4::Identity();
  h(0, 0) = 2.0;
  const RiemannTensor4 rm = kulkarni_nomizu(SymmetricForm2::identity(), SymmetricForm2(h));
  EXPECT_GT(duality_blocks(to_operator(rm)).einstein_residual(), 0.1);
  EXPECT_FALSE(is_einstein(rm, 1e-6).has_value());
}

TEST(DualityBlocks, TracelessWeylAndEinsteinAgreement) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    const RiemannTensor4 rm = test::random_tensor(17, i);
    const DualityBlocks b = duality_blocks(to_operator(rm));
    EXPECT_LT(std::abs(b.w_plus.trace()), 1e-10);
    EXPECT_LT(std::abs(b.w_minus.trace()), 1e-10);
    // Off-diagonal block vanishes iff the traceless Ricci tensor does.
    const double ric0 = ricci_contract(rm).traceless().matrix().cwiseAbs().maxCoeff();
    EXPECT_EQ(b.einstein_residual() <= 1e-9, ric0 <= 1e-9);
  }
}

TEST(DualityBlocks, HodgeStarCommutesExactlyForEinstein) {
  const Matrix6& star = hodge_star();
  const Matrix6 einstein = to_operator(test::sphere_product_tensor()).matrix();
  EXPECT_LT((star * einstein - einstein * star).cwiseAbs().maxCoeff(), 1e-15);
  const Matrix6 generic = to_operator(test::random_tensor(19, 0)).matrix();
  EXPECT_GT((star * generic - generic * star).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(IsEinstein, Examples) {
  EXPECT_NEAR(*is_einstein(test::sphere_tensor(1.0 / 3.0), 1e-9), 1.0, 1e-15);
  EXPECT_NEAR(*is_einstein(test::sphere_product_tensor(), 1e-9), 1.0, 1e-15);
  // Ric = diag(1, 1, 1, 1.1): add 0.05 * g (.) diag(0, 0, 0, 1) to the sphere.
  Matrix4 d = Matrix4::Zero();
  d(3, 3) = 1.0;
  const RiemannTensor4 rm =
      test::sphere_tensor(1.0 / 3.0) + 0.05 * kulkarni_nomizu(SymmetricForm2::identity(), SymmetricForm2(d));
  const Matrix4 ric = ricci_contract(rm).matrix();
  EXPECT_NEAR(ric(3, 3) - ric(0, 0), 0.1, 1e-12);
  EXPECT_FALSE(is_einstein(rm, 1e-6).has_value());
}

TEST(Rotate, PreservesSectionalCurvatureOfPlanes) {
  const RiemannTensor4 rm = test::random_tensor(23, 0);
  Rng rng(29);
  Matrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = rng.normal();
  const Matrix4 q = Eigen::HouseholderQR<Matrix4>(m).householderQ();
  const RiemannTensor4 r2 = rotate(rm, q);
  EXPECT_NEAR(r2(0, 1, 0, 1), sectional_curvature(rm, q.col(0), q.col(1)), 1e-12);
  EXPECT_LT(r2.symmetry_residual(), 1e-12);
}
