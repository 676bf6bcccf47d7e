#include "curv4/predicates.hpp"

#include "curv4/kernels.hpp"
#include "curv4/parallel.hpp"
#include "curv4/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace curv4 {

namespace {

constexpr std::array<std::string_view, 6> kSpectrumLabels{"lam1", "lam2", "lam3",
                                                          "mu1",  "mu2",  "mu3"};

// Slack for sign comparisons between algebraically equal quantities.
constexpr double kSignSlack = 1e-12;

std::string join_witness(const std::array<std::pair<double, std::string_view>, 6>& spectrum, int k) {
  std::string w;
  for (int i = 0; i < k; ++i) {
    if (i) w += "+";
    w += spectrum[static_cast<std::size_t>(i)].second;
  }
  return w;
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double r = 0.0;
  while (index > 0) {
    r += f * static_cast<double>(index % base);
    index /= base;
    f *= inv;
  }
  return r;
}

// Left multiplication by the quaternion p = (w, x, y, z) on R^4 = H.
Matrix4 left_mul(const Vector4& p) {
  Matrix4 m;
  m << p(0), -p(1), -p(2), -p(3),
       p(1),  p(0), -p(3),  p(2),
       p(2),  p(3),  p(0), -p(1),
       p(3), -p(2),  p(1),  p(0);
  return m;
}

Matrix4 right_mul(const Vector4& q) {
  Matrix4 m;
  m << q(0), -q(1), -q(2), -q(3),
       q(1),  q(0),  q(3), -q(2),
       q(2), -q(3),  q(0),  q(1),
       q(3),  q(2), -q(1),  q(0);
  return m;
}

// Shoemake: three uniforms to a uniformly distributed unit quaternion.
Vector4 unit_quaternion(double u1, double u2, double u3) {
  const double t2 = 2.0 * std::numbers::pi * u2;
  const double t3 = 2.0 * std::numbers::pi * u3;
  const double r1 = std::sqrt(1.0 - u1);
  const double r2 = std::sqrt(u1);
  return Vector4(r1 * std::sin(t2), r1 * std::cos(t2), r2 * std::sin(t3), r2 * std::cos(t3));
}

constexpr std::size_t kPermutationFrames = 24;

std::array<std::array<int, 4>, kPermutationFrames> permutations() {
  std::array<std::array<int, 4>, kPermutationFrames> out{};
  std::array<int, 4> p{0, 1, 2, 3};
  std::size_t n = 0;
  do {
    out[n++] = p;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

double plane_value(const Matrix6& m, const Vector4& x, const Vector4& y) {
  const Vector6 w = wedge(x, y);
  return w.dot(m * w) / w.squaredNorm();
}

// Unit vectors spanning the orthogonal complement of span(x, y), x and y
// orthonormal.
std::pair<Vector4, Vector4> complement(const Vector4& x, const Vector4& y) {
  std::array<Vector4, 4> cand;
  std::array<double, 4> norms{};
  for (int c = 0; c < 4; ++c) {
    Vector4 e = Vector4::Unit(c);
    e -= e.dot(x) * x + e.dot(y) * y;
    cand[static_cast<std::size_t>(c)] = e;
    norms[static_cast<std::size_t>(c)] = e.norm();
  }
  const auto first = static_cast<std::size_t>(std::max_element(norms.begin(), norms.end()) - norms.begin());
  Vector4 n1 = cand[first] / norms[first];
  std::size_t second = 4;
  double best = -1.0;
  Vector4 n2 = Vector4::Zero();
  for (std::size_t c = 0; c < 4; ++c) {
    if (c == first) continue;
    Vector4 e = cand[c] - cand[c].dot(n1) * n1;
    if (e.norm() > best) {
      best = e.norm();
      n2 = e;
      second = c;
    }
  }
  (void)second;
  return {n1, n2 / n2.norm()};
}

// Pattern search on Gr(2, 4); sign = +1 minimises, -1 maximises.
double polish_plane(const Matrix6& m, Vector4 x, Vector4 y, double sign) {
  x.normalize();
  y -= y.dot(x) * x;
  y.normalize();
  double best = sign * plane_value(m, x, y);
  double step = 0.05;
  int iterations = 0;
  while (step > 1e-10 && iterations < 200000) {
    ++iterations;
    const auto [n1, n2] = complement(x, y);
    bool improved = false;
    for (int which = 0; which < 2 && !improved; ++which)
      for (const Vector4* n : {&n1, &n2}) {
        for (double s : {step, -step}) {
          Vector4 cx = x;
          Vector4 cy = y;
          Vector4& v = which == 0 ? cx : cy;
          v = std::cos(s) * v + std::sin(s) * (*n);
          const double val = sign * plane_value(m, cx, cy);
          if (val < best) {
            best = val;
            x = cx;
            y = cy;
            improved = true;
            break;
          }
        }
        if (improved) break;
      }
    if (!improved) step *= 0.5;
  }
  return sign * best;
}

}  // namespace

std::string_view condition_id(Condition c) {
  switch (c) {
    case Condition::positive: return "positive";
    case Condition::two_positive: return "2-positive";
    case Condition::sectional_gt_twelfth: return "K>1/12";
    case Condition::three_positive: return "3-positive";
    case Condition::sectional_gt_thirtieth: return "K>1/30";
    case Condition::sectional_positive: return "K>0";
    case Condition::pic: return "pic";
    case Condition::half_pic_plus: return "half-pic+";
    case Condition::half_pic_minus: return "half-pic-";
    case Condition::four_positive: return "4-positive";
    case Condition::sectional_lt_one: return "K<1";
    case Condition::six_positive: return "6-positive";
    case Condition::scalar_positive: return "R>0";
  }
  return "?";
}

std::optional<Condition> parse_condition(std::string_view id) {
  for (Condition c : kAllConditions)
    if (condition_id(c) == id) return c;
  if (id == "1-positive") return Condition::positive;
  return std::nullopt;
}

std::array<std::pair<double, std::string_view>, 6> labelled_spectrum(const BergerForm& bf) {
  const HalfSpectra hs = half_spectra(bf);
  std::array<std::pair<double, std::string_view>, 6> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = {hs.lam[i], kSpectrumLabels[i]};
    out[i + 3] = {hs.mu[i], kSpectrumLabels[i + 3]};
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  return out;
}

ConditionMargin k_positive_margin(const BergerForm& bf, int k) {
  if (k < 1 || k > 6) throw std::out_of_range("k-positivity requires 1 <= k <= 6");
  const auto spectrum = labelled_spectrum(bf);
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += spectrum[static_cast<std::size_t>(i)].first;
  std::string name = k == 1 ? "positive" : std::to_string(k) + "-positive";
  return {std::move(name), sum, join_witness(spectrum, k)};
}

std::pair<double, double> sectional_range(const BergerForm& bf) {
  return {bf.a()[0], bf.a()[2]};
}

ConditionMargin pic_margin_closed(const BergerForm& bf) {
  const HalfSpectra hs = half_spectra(bf);
  const double plus = hs.lam[0] + hs.lam[1];
  const double minus = hs.mu[0] + hs.mu[1];
  return plus <= minus ? ConditionMargin{"pic", plus, "lam1+lam2"}
                       : ConditionMargin{"pic", minus, "mu1+mu2"};
}

Matrix4 sample_frame(std::uint64_t seed, std::uint64_t index) {
  if (index < kPermutationFrames) {
    static const auto perms = permutations();
    Matrix4 f = Matrix4::Zero();
    const auto& p = perms[index];
    for (int c = 0; c < 4; ++c) f(p[static_cast<std::size_t>(c)], c) = 1.0;
    return f;
  }
  static constexpr std::array<std::uint64_t, 6> bases{2, 3, 5, 7, 11, 13};
  Rng shift_rng(seed, 0x5eedf4a3ULL);
  std::array<double, 6> u{};
  for (std::size_t d = 0; d < 6; ++d) {
    const double shift = shift_rng.uniform();
    const double h = radical_inverse(index - kPermutationFrames + 1, bases[d]) + shift;
    u[d] = h - std::floor(h);
  }
  const Vector4 p = unit_quaternion(u[0], u[1], u[2]);
  Vector4 q = unit_quaternion(u[3], u[4], u[5]);
  q.tail<3>() *= -1.0;  // conjugate
  return left_mul(p) * right_mul(q);
}

ConditionMargin pic_margin_frames(const RiemannTensor4& rm, std::size_t samples,
                                  std::uint64_t seed, int threads) {
  const kernels::PackedOperator op(to_operator(rm).matrix());
  const std::size_t total = kPermutationFrames + samples;
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (total + kBlock - 1) / kBlock;

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::size_t index = 0;
  };
  const int workers = resolve_threads(threads);
  std::vector<Best> partial(static_cast<std::size_t>(std::max(1, workers)));

  parallel_chunks(blocks, workers, [&](std::size_t b0, std::size_t b1, std::size_t chunk) {
    std::vector<double> frames;
    std::vector<double> out;
    Best best;
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t begin = b * kBlock;
      const std::size_t n = std::min(kBlock, total - begin);
      frames.assign(16 * n, 0.0);
      out.assign(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const Matrix4 f = sample_frame(seed, begin + i);
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t c = 0; c < 4; ++c)
            frames[(4 * a + c) * n + i] = f(static_cast<int>(c), static_cast<int>(a));
      }
      kernels::isotropic_batch(op, frames, out);
      for (std::size_t i = 0; i < n; ++i)
        if (out[i] < best.value) best = {out[i], begin + i};
    }
    partial[chunk] = best;
  });

  Best best;
  for (const Best& p : partial)
    if (p.value < best.value || (p.value == best.value && p.index < best.index)) best = p;

  std::ostringstream w;
  if (best.index < kPermutationFrames)
    w << "axis-permutation frame " << best.index;
  else
    w << "rotation frame " << best.index - kPermutationFrames;
  w << " of " << total;
  return {"pic-frames", best.value, w.str()};
}

std::vector<ConditionMargin> half_conditions(const BergerForm& bf) {
  const HalfSpectra hs = half_spectra(bf);
  return {{"half-pic+", hs.lam[0] + hs.lam[1], "self-dual: lam1+lam2"},
          {"half-pic-", hs.mu[0] + hs.mu[1], "anti-self-dual: mu1+mu2"}};
}

ConditionMargin condition_margin(const BergerForm& bf, Condition c) {
  const BergerForm n = bf.normalized();
  const std::string id(condition_id(c));
  switch (c) {
    case Condition::positive: return {id, k_positive_margin(n, 1).margin, k_positive_margin(n, 1).witness};
    case Condition::two_positive: {
      auto m = k_positive_margin(n, 2);
      return {id, m.margin, m.witness};
    }
    case Condition::three_positive: {
      auto m = k_positive_margin(n, 3);
      return {id, m.margin, m.witness};
    }
    case Condition::four_positive: {
      auto m = k_positive_margin(n, 4);
      return {id, m.margin, m.witness};
    }
    case Condition::six_positive: {
      auto m = k_positive_margin(n, 6);
      return {id, m.margin, m.witness};
    }
    case Condition::sectional_gt_twelfth: return {id, n.a()[0] - 1.0 / 12.0, "a1 - 1/12"};
    case Condition::sectional_gt_thirtieth: return {id, n.a()[0] - 1.0 / 30.0, "a1 - 1/30"};
    case Condition::sectional_positive: return {id, n.a()[0], "a1"};
    case Condition::sectional_lt_one: return {id, 1.0 - n.a()[2], "1 - a3"};
    case Condition::pic: {
      auto m = pic_margin_closed(n);
      return {id, m.margin, m.witness};
    }
    case Condition::half_pic_plus: return {id, half_conditions(n)[0].margin, "lam1+lam2"};
    case Condition::half_pic_minus: return {id, half_conditions(n)[1].margin, "mu1+mu2"};
    case Condition::scalar_positive: return {id, 4.0 * n.lambda(), "R = 4 lambda"};
  }
  throw std::logic_error("unhandled condition");
}

std::string_view scope_name(ArrowScope s) {
  switch (s) {
    case ArrowScope::pointwise: return "pointwise";
    case ArrowScope::global: return "global";
    case ArrowScope::not_evaluated: return "not evaluated";
  }
  return "?";
}

const std::vector<TableArrow>& table1_arrows() {
  static const std::vector<TableArrow> arrows{
      {"positive", "2-positive", ArrowScope::pointwise},
      {"2-positive", "K>1/12", ArrowScope::global},
      {"K>1/12", "3-positive", ArrowScope::pointwise},
      {"3-positive", "K>1/30", ArrowScope::global},
      {"3-positive", "K>0", ArrowScope::global},
      {"K>1/30", "K>0", ArrowScope::pointwise},
      {"K>0", "4-positive", ArrowScope::pointwise},
      {"4-positive", "K<1", ArrowScope::pointwise},
      {"K<1", "4-positive", ArrowScope::global},
      {"2-positive", "pic", ArrowScope::pointwise},
      {"pic", "2-positive", ArrowScope::global},
      {"pic", "half-pic+", ArrowScope::pointwise},
      {"pic", "half-pic-", ArrowScope::pointwise},
      {"half-pic+", "conformally-half-pic", ArrowScope::not_evaluated},
      {"K<1", "6-positive", ArrowScope::pointwise},
      {"6-positive", "R>0", ArrowScope::pointwise},
      {"R>0", "6-positive", ArrowScope::pointwise},
  };
  return arrows;
}

std::vector<PointwiseFact> pointwise_facts(const BergerForm& bf, double delta) {
  const BergerForm n = bf.normalized();
  const auto& a = n.a();
  const auto& b = n.b();
  std::vector<PointwiseFact> facts;
  facts.push_back({"|b1| <= 1/3 - a1", std::abs(b[0]) <= 1.0 / 3.0 - a[0] + kSignSlack});
  facts.push_back({"|b2| <= (a3 - a1)/3", std::abs(b[1]) <= (a[2] - a[0]) / 3.0 + kSignSlack});
  facts.push_back({"a1 >= delta => a3 <= 1 - 2 delta",
                   !(a[0] >= delta) || a[2] <= 1.0 - 2.0 * delta + kSignSlack});

  const double four = k_positive_margin(n, 4).margin;
  const double closed = std::min({a[0] + a[1], 1.0 + a[0] + b[0], 1.0 + a[0] - b[0]});
  const bool four_agree = (four > 0.0) == (closed > 0.0) ||
                          std::min(std::abs(four), std::abs(closed)) <= kSignSlack;
  facts.push_back({"4-positive <=> a1+a2>0 and 1+(a1+-b1)>0", four_agree});

  const double six = k_positive_margin(n, 6).margin;
  facts.push_back({"6-positive <=> 2 lambda > 0",
                   ((six > 0.0) == (2.0 * n.lambda() > 0.0)) &&
                       std::abs(six - 2.0 * n.lambda()) <= 1e-12});
  return facts;
}

ImplicationReport table1_report(const BergerForm& bf, double tol) {
  ImplicationReport report;
  report.original_lambda = bf.lambda();
  report.rescale = 1.0 / bf.lambda();
  std::vector<std::pair<std::string, bool>> holds;
  for (Condition c : kAllConditions) {
    ConditionMargin m = condition_margin(bf, c);
    holds.emplace_back(m.name, m.holds(tol));
    report.margins.push_back(std::move(m));
  }
  auto lookup = [&](const std::string& id) {
    for (const auto& [name, h] : holds)
      if (name == id) return h;
    return false;
  };
  for (const TableArrow& arrow : table1_arrows()) {
    ImplicationVerdict v{arrow};
    if (arrow.scope != ArrowScope::not_evaluated) {
      v.antecedent_holds = lookup(arrow.antecedent);
      v.consequent_holds = lookup(arrow.consequent);
    } else {
      v.antecedent_holds = lookup(arrow.antecedent);
    }
    report.verdicts.push_back(std::move(v));
  }
  report.facts = pointwise_facts(bf, bf.normalized().a()[0]);
  return report;
}

std::vector<BulletCheck> bullet_equivalences_check(const BergerForm& bf) {
  const BergerForm n = bf.normalized();
  const auto& a = n.a();
  const auto& b = n.b();

  const CurvatureOperator6 op = to_operator(berger_to_tensor(n));
  const auto ev = op.eigenvalues();
  auto smallest_sum = [&](int k) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += ev[static_cast<std::size_t>(i)];
    return s;
  };
  const DualityBlocks blocks = duality_blocks(op);
  const Eigen::SelfAdjointEigenSolver<Matrix3> plus(blocks.plus_block(), Eigen::EigenvaluesOnly);
  const Eigen::SelfAdjointEigenSolver<Matrix3> minus(blocks.minus_block(), Eigen::EigenvaluesOnly);
  const auto& ep = plus.eigenvalues();
  const auto& em = minus.eigenvalues();

  auto check = [](std::string name, double closed, double direct) {
    const bool same_sign = (closed > 0.0) == (direct > 0.0) ||
                           std::min(std::abs(closed), std::abs(direct)) <= 1e-10;
    return BulletCheck{std::move(name), closed, direct,
                       same_sign && std::abs(closed - direct) <= 1e-9};
  };

  std::vector<BulletCheck> out;
  out.push_back(check("positive sectional: (a1+b1)+(a1-b1)", (a[0] + b[0]) + (a[0] - b[0]),
                      ep(0) + em(0)));
  out.push_back(check("2-positive: min((a1+a2)+-(b1+b2), 2a1)",
                      std::min({(a[0] + a[1]) + (b[0] + b[1]), (a[0] + a[1]) - (b[0] + b[1]),
                                2.0 * a[0]}),
                      smallest_sum(2)));
  out.push_back(check("pic: min((a1+a2)+-(b1+b2))",
                      std::min((a[0] + a[1]) + (b[0] + b[1]), (a[0] + a[1]) - (b[0] + b[1])),
                      std::min(ep(0) + ep(1), em(0) + em(1))));
  out.push_back(check("3-positive: 2a1+a2+-b2",
                      std::min(2.0 * a[0] + a[1] + b[1], 2.0 * a[0] + a[1] - b[1]),
                      smallest_sum(3)));
  out.push_back(check("4-positive: min(2(a1+a2), 1+(a1+-b1))",
                      std::min({2.0 * (a[0] + a[1]), 1.0 + a[0] + b[0], 1.0 + a[0] - b[0]}),
                      smallest_sum(4)));
  return out;
}

SectionalScan sectional_range_scan(const RiemannTensor4& rm, std::size_t samples,
                                   std::uint64_t seed) {
  const Matrix6 m = to_operator(rm).matrix();
  const kernels::PackedOperator op(m);
  std::vector<double> xs(4 * samples);
  std::vector<double> ys(4 * samples);
  Rng rng(seed, 0x91a7e5ULL);
  for (std::size_t i = 0; i < samples; ++i) {
    for (std::size_t c = 0; c < 4; ++c) xs[c * samples + i] = rng.normal();
    for (std::size_t c = 0; c < 4; ++c) ys[c * samples + i] = rng.normal();
  }
  std::vector<double> k(samples);
  kernels::sectional_batch(op, xs, ys, k);

  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return k[l] < k[r]; });

  auto plane = [&](std::size_t i) {
    Vector4 x, y;
    for (int c = 0; c < 4; ++c) {
      x(c) = xs[static_cast<std::size_t>(c) * samples + i];
      y(c) = ys[static_cast<std::size_t>(c) * samples + i];
    }
    return std::pair{x, y};
  };

  SectionalScan scan;
  scan.planes = samples;
  scan.min = std::numeric_limits<double>::infinity();
  scan.max = -std::numeric_limits<double>::infinity();
  const std::size_t starts = std::min<std::size_t>(4, samples);
  for (std::size_t s = 0; s < starts; ++s) {
    const auto [lx, ly] = plane(order[s]);
    scan.min = std::min(scan.min, polish_plane(m, lx, ly, 1.0));
    const auto [hx, hy] = plane(order[samples - 1 - s]);
    scan.max = std::max(scan.max, polish_plane(m, hx, hy, -1.0));
  }
  return scan;
}

}  // namespace curv4
