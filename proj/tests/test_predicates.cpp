#include "curv4/predicates.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace curv4;

namespace {

std::array<double, 6> six_eigenvalues(const BergerForm& bf) {
  const auto& a = bf.a();
  const auto& b = bf.b();
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

double margin_of(const ImplicationReport& r, const std::string& id) {
  for (const ConditionMargin& m : r.margins)
    if (m.name == id) return m.margin;
  ADD_FAILURE() << "no margin " << id;
  return 0.0;
}

}  // namespace

TEST(KPositive, Examples) {
  const BergerForm cp2 = models::complex_projective_plane();
  EXPECT_NEAR(k_positive_margin(cp2, 3).margin, 1.0 / 3.0, 1e-15);
  EXPECT_EQ(k_positive_margin(cp2, 3).witness, "lam1+lam2+mu1");
  EXPECT_NEAR(k_positive_margin(cp2, 2).margin, 0.0, 1e-15);
  EXPECT_FALSE(k_positive_margin(cp2, 2).holds());
  EXPECT_NEAR(k_positive_margin(models::round_sphere(), 1).margin, 1.0 / 3.0, 1e-15);
  for (const BergerForm& bf : sample_admissible(5, 1.0, 100))
    EXPECT_NEAR(k_positive_margin(bf, 6).margin, 2.0, 1e-12);
  EXPECT_THROW(k_positive_margin(cp2, 0), std::out_of_range);
  EXPECT_THROW(k_positive_margin(cp2, 7), std::out_of_range);
}

TEST(KPositive, MatchesSubsetEnumeration) {
  for (const BergerForm& bf : sample_admissible(6, 1.0, 10000)) {
    const auto ev = six_eigenvalues(bf);
    for (int k = 1; k <= 6; ++k)
      ASSERT_NEAR(k_positive_margin(bf, k).margin, test::min_subset_sum(ev, k), 1e-12);
    const auto& a = bf.a();
    const auto& b = bf.b();
    ASSERT_NEAR(test::min_subset_sum(ev, 3), std::min(2 * a[0] + a[1] + b[1], 2 * a[0] + a[1] - b[1]), 1e-12);
  }
}

TEST(SectionalRange, Examples) {
  const auto [lo, hi] = sectional_range(models::complex_projective_plane());
  EXPECT_NEAR(lo, 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(hi, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(sectional_range(models::sphere_product()), (std::pair{0.0, 1.0}));
}

TEST(SectionalRange, BruteForceOnNamedSpaces) {
  for (const BergerForm& bf : {models::round_sphere(), models::complex_projective_plane(), models::sphere_product()}) {
    const SectionalScan scan = sectional_range_scan(berger_to_tensor(bf), 10000, 1);
    EXPECT_NEAR(scan.min, bf.a()[0], 1e-6);
    EXPECT_NEAR(scan.max, bf.a()[2], 1e-6);
  }
}

TEST(Pic, ClosedFormExamples) {
  EXPECT_NEAR(pic_margin_closed(models::round_sphere()).margin, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(pic_margin_closed(models::complex_projective_plane()).margin, 0.0, 1e-15);
  EXPECT_NEAR(pic_margin_closed(models::sphere_product()).margin, 0.0, 1e-15);
}

TEST(Pic, FramesOnRoundSphereAreConstant) {
  // 4K - 2 * 0 for every frame.
  const ConditionMargin m = pic_margin_frames(test::sphere_tensor(1.0 / 3.0), 2000, 3);
  EXPECT_NEAR(m.margin, 4.0 / 3.0, 1e-12);
}

TEST(Pic, FramesBoundClosedFormFromAbove) {
  for (const BergerForm& bf : {models::complex_projective_plane(), models::sphere_product()})
    EXPECT_NEAR(pic_margin_frames(berger_to_tensor(bf), 5000, 1).margin, 0.0, 1e-12);
  for (const BergerForm& bf : sample_admissible(8, 1.0, 10)) {
    const double closed = pic_margin_closed(bf).margin;
    const double frames = 0.5 * pic_margin_frames(berger_to_tensor(bf), 20000, 2).margin;
    EXPECT_GE(frames, closed - 1e-9);
    // Axis-permutation frames attain the minimum on Berger tensors.
    EXPECT_NEAR(frames, closed, 1e-12);
  }
}

TEST(Pic, FramesOnRotatedTensorsConverge) {
  Rng rng(41);
  for (const BergerForm& bf : sample_admissible(9, 1.0, 3)) {
    Matrix4 m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = rng.normal();
    const Matrix4 q = Eigen::HouseholderQR<Matrix4>(m).householderQ();
    const RiemannTensor4 rotated = rotate(berger_to_tensor(bf), q);
    const double closed = pic_margin_closed(bf).margin;
    const double frames = 0.5 * pic_margin_frames(rotated, 1000000, 3).margin;
    EXPECT_GE(frames, closed - 1e-9);
    EXPECT_LT(frames - closed, 1e-2);
  }
}

TEST(Pic, FramesIndependentOfThreadCount) {
  const RiemannTensor4 rm = rotate(berger_to_tensor(sample_admissible_at(10, 0, 1.0)),
                                   sample_frame(5, 100));
  const ConditionMargin one = pic_margin_frames(rm, 30000, 4, 1);
  const ConditionMargin many = pic_margin_frames(rm, 30000, 4, 8);
  EXPECT_EQ(one.margin, many.margin);
  EXPECT_EQ(one.witness, many.witness);
}

TEST(SampleFrame, Orthonormal) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Matrix4 f = sample_frame(7, i);
    EXPECT_LT((f.transpose() * f - Matrix4::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(HalfConditions, Examples) {
  const auto cp2 = half_conditions(models::complex_projective_plane());
  EXPECT_NEAR(cp2[0].margin, 0.0, 1e-15);
  EXPECT_NEAR(cp2[1].margin, 2.0 / 3.0, 1e-15);
  for (const ConditionMargin& m : half_conditions(models::round_sphere())) EXPECT_NEAR(m.margin, 2.0 / 3.0, 1e-15);
  // lam = (-0.1, 0.3, 0.8), mu = (0.2, 0.3, 0.5).
  const BergerForm bf = from_half_spectra({{-0.1, 0.3, 0.8}, {0.2, 0.3, 0.5}});
  EXPECT_NEAR(half_conditions(bf)[0].margin, 0.2, 1e-15);
}

TEST(ImplicationTable, RoundSphereAllStrictConditionsHold) {
  const ImplicationReport r = table1_report(models::round_sphere());
  for (const ConditionMargin& m : r.margins) EXPECT_GT(m.margin, 1e-9) << m.name;
  for (const ImplicationVerdict& v : r.verdicts) EXPECT_FALSE(v.violated());
}

TEST(ImplicationTable, ComplexProjectivePlane) {
  const ImplicationReport r = table1_report(models::complex_projective_plane());
  EXPECT_NEAR(margin_of(r, "3-positive"), 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(margin_of(r, "2-positive"), 0.0, 1e-9);
  EXPECT_NEAR(margin_of(r, "K>1/12"), 1.0 / 12.0, 1e-9);
  EXPECT_NEAR(margin_of(r, "K<1"), 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(margin_of(r, "pic"), 0.0, 1e-9);
}

TEST(ImplicationTable, SphereProduct) {
  const ImplicationReport r = table1_report(models::sphere_product());
  EXPECT_NEAR(margin_of(r, "4-positive"), 0.0, 1e-9);
  EXPECT_NEAR(margin_of(r, "K<1"), 0.0, 1e-9);
  EXPECT_NEAR(margin_of(r, "6-positive"), 2.0, 1e-9);
}

TEST(ImplicationTable, RescalesToUnitLambda) {
  const ImplicationReport r = table1_report(models::complex_projective_plane(3.0));
  EXPECT_DOUBLE_EQ(r.original_lambda, 3.0);
  EXPECT_DOUBLE_EQ(r.rescale, 1.0 / 3.0);
  EXPECT_NEAR(margin_of(r, "3-positive"), 1.0 / 3.0, 1e-12);
}

TEST(ImplicationTable, ConformalRowNotEvaluated) {
  const ImplicationReport r = table1_report(models::round_sphere());
  bool found = false;
  for (const ImplicationVerdict& v : r.verdicts)
    if (v.arrow.scope == ArrowScope::not_evaluated) {
      found = true;
      EXPECT_FALSE(v.violated());
    }
  EXPECT_TRUE(found);
}

TEST(PointwiseImplications, NoViolationsOverSamples) {
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const double hw[] = {2.0, 1.0, 0.5, 0.25};
    const BergerForm bf = sample_admissible_at(12, i, 1.0, {hw[i % 4]});
    const ImplicationReport r = table1_report(bf);
    for (const ImplicationVerdict& v : r.verdicts)
      if (v.arrow.scope == ArrowScope::pointwise) {
        ASSERT_FALSE(v.violated()) << v.arrow.antecedent << " => " << v.arrow.consequent;
      }
    for (const PointwiseFact& f : pointwise_facts(bf, Rng(13, i).uniform(-0.5, 1.0 / 3.0)))
      ASSERT_TRUE(f.holds) << f.name;
  }
}

TEST(PointwiseImplications, GlobalArrowHasPointwiseCounterexamples) {
  // 3-positive forms with a1 <= 0 exist pointwise.
  const BergerForm bf = from_half_spectra({{-0.05, 0.4, 0.65}, {0.02, 0.2, 0.78}});
  EXPECT_TRUE(k_positive_margin(bf, 3).holds());
  EXPECT_LE(bf.a()[0], 0.0);
}

TEST(BulletEquivalences, AgreeOnSamplesAndModels) {
  for (const BergerForm& bf : sample_admissible(14, 1.0, 1000))
    for (const BulletCheck& b : bullet_equivalences_check(bf)) ASSERT_TRUE(b.agree) << b.name;
  for (const BergerForm& bf : {models::round_sphere(), models::complex_projective_plane()})
    for (const BulletCheck& b : bullet_equivalences_check(bf)) EXPECT_TRUE(b.agree) << b.name;
  const auto cp2 = bullet_equivalences_check(models::complex_projective_plane());
  EXPECT_NEAR(cp2[3].closed_form, 1.0 / 3.0, 1e-15);
}

TEST(Conditions, IdentifiersRoundTrip) {
  for (Condition c : kAllConditions) EXPECT_EQ(parse_condition(condition_id(c)), c);
  EXPECT_FALSE(parse_condition("7-positive").has_value());
}
