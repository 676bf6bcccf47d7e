#pragma once

// Curvature conditions as signed margins: a condition holds strictly iff its
// margin is positive. Margins on a BergerForm are in the form's own units;
// table1_report rescales to lambda = 1 first.

#include "curv4/berger.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace curv4 {

enum class Condition {
  positive,
  two_positive,
  sectional_gt_twelfth,
  three_positive,
  sectional_gt_thirtieth,
  sectional_positive,
  pic,
  half_pic_plus,
  half_pic_minus,
  four_positive,
  sectional_lt_one,
  six_positive,
  scalar_positive,
};

inline constexpr std::array kAllConditions{
    Condition::positive,          Condition::two_positive,
    Condition::sectional_gt_twelfth, Condition::three_positive,
    Condition::sectional_gt_thirtieth, Condition::sectional_positive,
    Condition::pic,               Condition::half_pic_plus,
    Condition::half_pic_minus,    Condition::four_positive,
    Condition::sectional_lt_one,  Condition::six_positive,
    Condition::scalar_positive,
};

/// Stable identifiers used by the CLI ("3-positive", "K>1/12", "pic", ...).
std::string_view condition_id(Condition c);
std::optional<Condition> parse_condition(std::string_view id);

struct ConditionMargin {
  std::string name;
  double margin = 0.0;
  std::string witness;

  bool holds(double tol = 0.0) const { return margin > tol; }
};

/// The six eigenvalues {a_i + b_i, a_i - b_i}, ascending, with labels
/// lam1..lam3, mu1..mu3. Ties keep label order.
std::array<std::pair<double, std::string_view>, 6> labelled_spectrum(const BergerForm& bf);

/// Sum of the k smallest operator eigenvalues, k in 1..6.
ConditionMargin k_positive_margin(const BergerForm& bf, int k);

/// (min, max) sectional curvature = (a1, a3).
std::pair<double, double> sectional_range(const BergerForm& bf);

/// min(lam1 + lam2, mu1 + mu2).
ConditionMargin pic_margin_closed(const BergerForm& bf);

/// Minimum of R_ikik + R_ilil + R_jkjk + R_jljl - 2|R_ijkl| over the 24
/// axis-permutation frames and `samples` quasi-random rotations (Halton
/// points with a seed-dependent shift). The absolute value covers both
/// orientations. On Berger tensors the minimum is 2 * pic_margin_closed.
ConditionMargin pic_margin_frames(const RiemannTensor4& rm, std::size_t samples,
                                  std::uint64_t seed, int threads = 0);

/// Orthonormal frame (as matrix columns) used as sample `index` by
/// pic_margin_frames; indices below 24 are the permutation frames.
Matrix4 sample_frame(std::uint64_t seed, std::uint64_t index);

/// Self-dual (lam1 + lam2) and anti-self-dual (mu1 + mu2) margins.
std::vector<ConditionMargin> half_conditions(const BergerForm& bf);

/// Margin of `c` after rescaling to lambda = 1.
ConditionMargin condition_margin(const BergerForm& bf, Condition c);

enum class ArrowScope { pointwise, global, not_evaluated };
std::string_view scope_name(ArrowScope s);

struct TableArrow {
  std::string antecedent;
  std::string consequent;
  ArrowScope scope;
};

/// The implications of the Einstein curvature table, tagged by whether they
/// hold pointwise on admissible Berger data or only globally.
const std::vector<TableArrow>& table1_arrows();

struct ImplicationVerdict {
  TableArrow arrow;
  bool antecedent_holds = false;
  bool consequent_holds = false;

  bool violated() const {
    return arrow.scope != ArrowScope::not_evaluated && antecedent_holds && !consequent_holds;
  }
};

/// Algebraic facts that hold for every admissible form with lambda = 1.
struct PointwiseFact {
  std::string name;
  bool holds = false;
};

struct ImplicationReport {
  double original_lambda = 1.0;
  double rescale = 1.0;
  std::vector<ConditionMargin> margins;
  std::vector<ImplicationVerdict> verdicts;
  std::vector<PointwiseFact> facts;
};

/// Margins for every table condition plus the arrow verdicts. Strictness
/// threshold: a condition holds iff margin > tol.
ImplicationReport table1_report(const BergerForm& bf, double tol = 0.0);

/// Facts checked on every sample: |b1| <= 1/3 - a1, |b2| <= (a3 - a1)/3,
/// a1 >= delta => a3 <= 1 - 2 delta, 4-positivity closed form, 6-positivity.
std::vector<PointwiseFact> pointwise_facts(const BergerForm& bf, double delta);

struct BulletCheck {
  std::string name;
  double closed_form = 0.0;
  double direct = 0.0;
  bool agree = false;
};

/// Compares each closed form (positive sectional, 2-/3-/4-positivity, PIC)
/// with eigenvalue sums from a numerical diagonalisation of the
/// reconstructed operator.
std::vector<BulletCheck> bullet_equivalences_check(const BergerForm& bf);

struct SectionalScan {
  double min = 0.0;
  double max = 0.0;
  std::size_t planes = 0;
};

/// Brute-force sectional curvature range: `samples` Gaussian random planes,
/// then a pattern search on the Grassmannian from the best few.
SectionalScan sectional_range_scan(const RiemannTensor4& rm, std::size_t samples,
                                   std::uint64_t seed);

}  // namespace curv4
