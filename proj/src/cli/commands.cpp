#include "curv4/cli/commands.hpp"

#include "curv4/bounds.hpp"
#include "curv4/cli/document.hpp"
#include "curv4/cli/report.hpp"
#include "curv4/errors.hpp"
#include "curv4/parallel.hpp"
#include "curv4/predicates.hpp"
#include "curv4/random.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace curv4::cli {

namespace {

constexpr std::size_t kCheckFrameSamples = 20000;
constexpr std::array<double, 4> kMixtureHalfWidths{2.0, 1.0, 0.5, 0.25};

template <typename F>
CommandOutput guarded(F&& body) {
  try {
    return body();
  } catch (const NonEinsteinError& e) {
    return {"", std::string("error: ") + e.what() + "\n", kExitNonEinstein};
  } catch (const ParseError& e) {
    return {"", std::string("error: ") + e.what() + "\n", kExitParseError};
  } catch (const InvariantError& e) {
    return {"", std::string("error: ") + e.what() + "\n", kExitParseError};
  } catch (const std::invalid_argument& e) {
    return {"", std::string("error: ") + e.what() + "\n", kExitParseError};
  }
}

Report triple(const Triple& t) { return Report::array({number(t[0]), number(t[1]), number(t[2])}); }

template <typename M>
Report rows(const M& m) {
  Report out = Report::array();
  for (int i = 0; i < m.rows(); ++i) {
    Report row = Report::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
    out.push_back(row);
  }
  return out;
}

Report berger_report(const BergerForm& bf) {
  const BergerForm n = bf.normalized();
  const HalfSpectra hs = half_spectra(n);
  Report r;
  r["lambda"] = number(bf.lambda());
  r["a"] = triple(bf.a());
  r["b"] = triple(bf.b());
  r["rescale"] = number(1.0 / bf.lambda());
  r["normalized"] = {{"a", triple(n.a())}, {"b", triple(n.b())}};
  r["half_spectra"] = {{"lam", triple(hs.lam)}, {"mu", triple(hs.mu)}};
  return r;
}

Report result_report(const OptimizationResult& res) {
  Report r;
  r["problem"] = res.problem;
  r["feasible"] = res.feasible;
  r["best_value"] = number(res.best_value);
  Report m = Report::object();
  for (const auto& [name, value] : res.minimizer) m[name] = number(value);
  r["minimizer"] = m;
  r["grid"] = res.grid;
  r["refinement_depth"] = res.refinement_depth;
  r["grid_resolution"] = number(res.grid_resolution);
  r["points_evaluated"] = res.points_evaluated;
  r["feasible_points_evaluated"] = res.feasible_points_evaluated;
  return r;
}

enum class Relation { within, at_least, at_most, greater_than };

struct Checks {
  Report list = Report::array();
  bool failed = false;
  bool infeasible = false;

  void add(const std::string& name, const OptimizationResult* res, double value, double target,
           double tolerance, Relation rel) {
    Report c;
    c["check"] = name;
    bool pass = false;
    switch (rel) {
      case Relation::within:
        c["relation"] = "|value - target| <= tolerance";
        pass = std::abs(value - target) <= tolerance;
        break;
      case Relation::at_least:
        c["relation"] = "value >= target - tolerance";
        pass = value >= target - tolerance;
        break;
      case Relation::at_most:
        c["relation"] = "value <= target + tolerance";
        pass = value <= target + tolerance;
        break;
      case Relation::greater_than:
        c["relation"] = "value > target - tolerance";
        pass = value > target - tolerance;
        break;
    }
    c["value"] = number(value);
    c["target"] = number(target);
    c["gap"] = number(value - target);
    c["tolerance"] = number(tolerance);
    std::string status = pass ? "PASS" : "FAIL";
    if (res && !res->feasible) {
      status = "INFEASIBLE";
      infeasible = true;
    } else if (!pass) {
      failed = true;
    }
    c["status"] = status;
    if (res) c["result"] = result_report(*res);
    list.push_back(c);
  }
};

Report thm2_section(const BoundsOptions& bo, Checks& checks) {
  const ThreePositiveBound b = thm11_3pos_sectional_bound(bo);
  const KCurveAnalysis& k = b.curves;
  Checks local;
  local.add("min over k in [1, 4] of (2k - 1)/(5k^2 + 14k + 11)", &k.lower_min, k.lower_min.best_value,
            kThreePositiveTarget, 1e-9, Relation::within);
  local.add("lower curve at k = 4", nullptr, k.lower_at_4, 7.0 / 147.0, 1e-12, Relation::within);
  local.add("min a1 under 3-positivity and stationarity", &b.direct, b.direct.best_value,
            kThreePositiveTarget, 1e-3, Relation::at_least);
  Report s;
  s["checks"] = local.list;
  s["strict_margin"] = number(bo.strict_margin);
  s["k_curves"] = {
      {"lower_at_1", number(k.lower_at_1)},
      {"lower_at_4", number(k.lower_at_4)},
      {"window_holds_on_1_to_4", k.window_holds_on_1_to_4},
      {"window_end", number(k.window_end)},
      {"plus_branch_min_k", result_report(k.plus_branch_min_k)},
      {"plus_branch_max_k", result_report(k.plus_branch_max_k)},
  };
  for (const Report& c : local.list) checks.list.push_back(c);
  checks.failed |= local.failed;
  checks.infeasible |= local.infeasible;
  return s;
}

Report thm3_section(const BoundsOptions& bo, Checks& checks) {
  const FourPositiveBound b = thm11_4pos_sectional_bound(bo);
  Checks local;
  local.add("min a1, proof-level problem", &b.proof_level, b.proof_level.best_value, kFourPositiveTarget,
            1e-3, Relation::within);
  local.add("smaller root of a^2 - 8a - 1", nullptr, b.scalar_root, kFourPositiveTarget, 1e-9,
            Relation::within);
  local.add("min a1, full Berger data", &b.full_berger, b.full_berger.best_value, kFourPositiveTarget,
            1e-3, Relation::at_least);
  local.add("min a1 without stationarity", &b.relaxed, b.relaxed.best_value, -1.0 / 3.0, 1e-3,
            Relation::at_most);
  for (const Report& c : local.list) checks.list.push_back(c);
  checks.failed |= local.failed;
  checks.infeasible |= local.infeasible;
  return {{"checks", local.list}};
}

Report prop12_section(const BoundsOptions& bo, Checks& checks) {
  const OptimizationResult s1 = prop12_step1(bo);
  const PinchingStep2 s2 = prop12_step2(bo);
  Checks local;
  local.add("step 1: min a1", &s1, s1.best_value, kPinchLower, 1e-3, Relation::within);
  local.add("step 2: min 1 + mu1 - lam3", &s2.step2, s2.step2.best_value, 0.0, 1e-4,
            Relation::greater_than);
  local.add("step 2 mirror: min 1 + lam1 - mu3", &s2.mirror, s2.mirror.best_value, 0.0, 1e-4,
            Relation::greater_than);
  local.add("step 2, strict constraints tightened", &s2.step2_tightened, s2.step2_tightened.best_value,
            0.0, 0.0, Relation::greater_than);
  local.add("step 2 mirror, strict constraints tightened", &s2.mirror_tightened,
            s2.mirror_tightened.best_value, 0.0, 0.0, Relation::greater_than);
  for (const Report& c : local.list) checks.list.push_back(c);
  checks.failed |= local.failed;
  checks.infeasible |= local.infeasible;
  Report s;
  s["upper_constant"] = number(kPinchUpper);
  s["lower_constant"] = number(kPinchLower);
  s["tighten"] = number(bo.tighten);
  s["checks"] = local.list;
  return s;
}

Report prop13_point(const HalfMinBound& h) {
  return {{"lam3_w", number(h.lam3_w)},
          {"numeric", number(h.numeric.best_value)},
          {"analytic", number(h.analytic)},
          {"gap", number(h.numeric.best_value - h.analytic)},
          {"ordered_triple_feasible", h.ordered_triple_feasible}};
}

Report prop13_section(const BoundsOptions& bo, std::optional<double> lam3, Checks& checks) {
  Checks local;
  Report s;
  const double slope = 1.0 - std::sqrt(3.0);
  if (lam3) {
    const HalfMinBound h = prop13_bound(*lam3, bo);
    local.add("numeric vs analytic", &h.numeric, h.numeric.best_value, h.analytic, 1e-6,
              Relation::within);
    if (*lam3 > 0.0)
      local.add("bound above (1 - sqrt3) lam3", nullptr, h.analytic, slope * *lam3, 0.0,
                Relation::greater_than);
    s["point"] = prop13_point(h);
  } else {
    Report points = Report::array();
    double max_gap = 0.0;
    int below_line = 0;
    bool all_feasible = true;
    for (int i = 0; i < 50; ++i) {
      const double w = static_cast<double>(i) / 49.0;
      const HalfMinBound h = prop13_bound(w, bo);
      all_feasible &= h.numeric.feasible;
      max_gap = std::max(max_gap, std::abs(h.numeric.best_value - h.analytic));
      if (w > 0.0 && !(h.analytic > slope * w && h.numeric.best_value > slope * w)) ++below_line;
      points.push_back(prop13_point(h));
    }
    OptimizationResult sweep;
    sweep.problem = "50-point sweep";
    sweep.feasible = all_feasible;
    local.add("max |numeric - analytic| on 50 points in [0, 1]", all_feasible ? nullptr : &sweep,
              max_gap, 0.0, 1e-6, Relation::within);
    local.add("points not above (1 - sqrt3) lam3", nullptr, below_line, 0.0, 0.0, Relation::within);
    const HalfMinBound cp2 = prop13_bound(2.0 / 3.0, bo);
    local.add("CP2 witness: minimum at lam3 = 2/3", &cp2.numeric, cp2.numeric.best_value, -1.0 / 3.0,
              1e-9, Relation::within);
    const std::array<double, 1> witness{-1.0 / 3.0};
    local.add("CP2 witness: stationarity equality", nullptr,
              problem_half_min(2.0 / 3.0).min_margin(witness), 0.0, 1e-9, Relation::within);
    s["points"] = points;
  }
  for (const Report& c : local.list) checks.list.push_back(c);
  checks.failed |= local.failed;
  checks.infeasible |= local.infeasible;
  s["checks"] = local.list;
  return s;
}

double fact_delta(std::uint64_t seed, std::uint64_t index) {
  Rng rng(splitmix64(seed) ^ 0xDE17AULL, index);
  return rng.uniform(-0.5, 1.0 / 3.0);
}

}  // namespace

BergerForm mixture_sample(std::uint64_t seed, std::uint64_t index) {
  return sample_admissible_at(seed, index, 1.0, {kMixtureHalfWidths[index % kMixtureHalfWidths.size()]});
}

CommandOutput cmd_decompose(const std::string& path, const GlobalOptions& g) {
  return guarded([&]() -> CommandOutput {
    const InputDocument doc = load_document(path, g.tol);
    const double tol = doc.tol.value_or(g.tol);
    const RiemannTensor4 rm = doc.tensor();
    Report r;
    r["command"] = "decompose";
    r["input"] = {{"path", path}, {"kind", doc.berger ? "berger" : "riemann"}, {"tol", number(tol)}};

    const StandardDecomposition sd = standard_decompose(rm);
    const SymmetricForm2 ric = ricci_contract(rm);
    r["standard"] = {
        {"scalar", number(sd.scalar)},
        {"ricci", rows(ric.matrix())},
        {"traceless_ricci_max", number(ric.traceless().matrix().cwiseAbs().maxCoeff())},
        {"weyl_max", number(sd.weyl.max_abs())},
        {"ric_part_max", number(sd.ric_part.max_abs())},
        {"scalar_part_max", number(sd.scalar_part.max_abs())},
        {"weyl_trace_residual", number(ricci_contract(sd.weyl).matrix().cwiseAbs().maxCoeff())},
        {"reconstruction_residual", number((rm - sd.reconstruct()).max_abs())},
    };
    const CurvatureOperator6 op = to_operator(rm);
    const auto ev = op.eigenvalues();
    Report evs = Report::array();
    for (double e : ev) evs.push_back(number(e));
    r["operator"] = {{"matrix", rows(op.matrix())}, {"trace", number(op.trace())}, {"eigenvalues", evs}};
    const DualityBlocks blocks = duality_blocks(op);
    r["duality"] = {{"scalar", number(blocks.scalar)},
                    {"w_plus", rows(blocks.w_plus)},
                    {"w_minus", rows(blocks.w_minus)},
                    {"off_diag", rows(blocks.off_diag)},
                    {"einstein_residual", number(blocks.einstein_residual())}};
    try {
      r["berger"] = berger_report(doc.berger_form(tol));
    } catch (const NonEinsteinError& e) {
      r["berger"] = {{"status", "not Einstein"}, {"residual", number(e.residual())}};
      return {render(r, g.machine), std::string("error: ") + e.what() + "\n", kExitNonEinstein};
    }
    return {render(r, g.machine), "", kExitOk};
  });
}

CommandOutput cmd_check(const std::string& path, const std::optional<std::string>& assert_condition,
                        const GlobalOptions& g) {
  return guarded([&]() -> CommandOutput {
    std::optional<Condition> asserted;
    if (assert_condition) {
      asserted = parse_condition(*assert_condition);
      if (!asserted) throw ParseError("unknown condition \"" + *assert_condition + "\"");
    }
    const InputDocument doc = load_document(path, g.tol);
    const double tol = doc.tol.value_or(g.tol);
    const BergerForm bf = doc.berger_form(tol);
    const ImplicationReport rep = table1_report(bf, g.tol);

    Report r;
    r["command"] = "check";
    r["input"] = {{"path", path},
                  {"kind", doc.berger ? "berger" : "riemann"},
                  {"original_lambda", number(rep.original_lambda)},
                  {"rescale", number(rep.rescale)},
                  {"strictness_tol", number(g.tol)}};
    r["berger"] = berger_report(bf);
    const auto [kmin, kmax] = sectional_range(bf.normalized());
    r["sectional_range"] = Report::array({number(kmin), number(kmax)});

    Report margins = Report::array();
    for (const ConditionMargin& m : rep.margins)
      margins.push_back({{"condition", m.name},
                         {"margin", number(m.margin)},
                         {"holds", m.holds(g.tol)},
                         {"witness", m.witness}});
    r["margins"] = margins;

    const ConditionMargin frames =
        pic_margin_frames(rep.rescale * doc.tensor(), kCheckFrameSamples, g.seed, g.threads);
    r["pic_frames"] = {{"samples", kCheckFrameSamples},
                       {"frame_margin", number(frames.margin)},
                       {"half_frame_margin", number(0.5 * frames.margin)},
                       {"witness", frames.witness}};

    Report verdicts = Report::array();
    for (const ImplicationVerdict& v : rep.verdicts) {
      std::string status;
      if (v.arrow.scope == ArrowScope::not_evaluated)
        status = "not evaluated";
      else if (!v.antecedent_holds)
        status = "vacuous";
      else
        status = v.consequent_holds ? "holds" : (v.arrow.scope == ArrowScope::global ? "fails here (global arrow)"
                                                                                     : "VIOLATED");
      verdicts.push_back({{"arrow", v.arrow.antecedent + " => " + v.arrow.consequent},
                          {"scope", std::string(scope_name(v.arrow.scope))},
                          {"status", status}});
    }
    r["implications"] = verdicts;
    Report facts = Report::array();
    for (const PointwiseFact& f : rep.facts) facts.push_back({{"fact", f.name}, {"holds", f.holds}});
    r["facts"] = facts;
    Report bullets = Report::array();
    for (const BulletCheck& b : bullet_equivalences_check(bf))
      bullets.push_back({{"bullet", b.name},
                         {"closed_form", number(b.closed_form)},
                         {"eigenvalues", number(b.direct)},
                         {"agree", b.agree}});
    r["bullets"] = bullets;

    int code = kExitOk;
    if (asserted) {
      const ConditionMargin m = condition_margin(bf, *asserted);
      const bool pass = m.holds(g.tol);
      r["assert"] = {{"condition", m.name},
                     {"margin", number(m.margin)},
                     {"tol", number(g.tol)},
                     {"result", pass ? "pass" : "fail"}};
      if (!pass) code = kExitAssertFailed;
    }
    return {render(r, g.machine), "", code};
  });
}

CommandOutput cmd_verify_bounds(const std::string& which, std::optional<double> lam3,
                                const GlobalOptions& g) {
  return guarded([&]() -> CommandOutput {
    if (which != "all" && which != "thm2" && which != "thm3" && which != "prop12" && which != "prop13")
      throw ParseError("--which must be one of all, thm2, thm3, prop12, prop13");
    BoundsOptions bo;
    bo.grid = g.grid;
    bo.depth = g.depth;
    bo.threads = g.threads;
    if (g.grid && *g.grid < 8) throw ParseError("--grid must be at least 8");
    if (g.depth && *g.depth < 0) throw ParseError("--depth must be nonnegative");

    Report r;
    r["command"] = "verify-bounds";
    r["which"] = which;
    r["grid"] = g.grid ? Report(*g.grid) : Report("default");
    r["depth"] = g.depth ? Report(*g.depth) : Report("default");
    Checks checks;
    if (which == "all" || which == "thm2") r["thm2"] = thm2_section(bo, checks);
    if (which == "all" || which == "thm3") r["thm3"] = thm3_section(bo, checks);
    if (which == "all" || which == "prop12") r["prop12"] = prop12_section(bo, checks);
    if (which == "all" || which == "prop13") r["prop13"] = prop13_section(bo, lam3, checks);

    std::size_t pass = 0;
    for (const Report& c : checks.list)
      if (c["status"] == "PASS") ++pass;
    r["summary"] = {{"checks", checks.list.size()}, {"passed", pass}};
    int code = kExitOk;
    if (checks.infeasible)
      code = kExitInfeasible;
    else if (checks.failed)
      code = kExitAssertFailed;
    return {render(r, g.machine), "", code};
  });
}

CommandOutput cmd_sample(std::size_t count, const std::optional<std::string>& condition,
                         const GlobalOptions& g) {
  return guarded([&]() -> CommandOutput {
    if (count < 1) throw ParseError("--count must be at least 1");
    std::optional<Condition> filter;
    if (condition) {
      filter = parse_condition(*condition);
      if (!filter) throw ParseError("unknown condition \"" + *condition + "\"");
    }
    const std::size_t max_tries = 1000 * count;
    std::string out;
    std::size_t accepted = 0;
    std::size_t tried = 0;
    for (std::uint64_t i = 0; accepted < count && tried < max_tries; ++i) {
      ++tried;
      const BergerForm bf = mixture_sample(g.seed, i);
      if (filter && !condition_margin(bf, *filter).holds(g.tol)) continue;
      ++accepted;
      nlohmann::ordered_json doc;
      doc["format_version"] = kFormatVersion;
      doc["berger"] = emit_berger(bf);
      out += doc.dump() + "\n";
    }
    std::ostringstream err;
    err << "accepted " << accepted << " of " << tried << " samples";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", static_cast<double>(accepted) / static_cast<double>(tried));
    err << " (acceptance rate " << buf << ")\n";
    return {out, err.str(), accepted == count ? kExitOk : kExitAssertFailed};
  });
}

CommandOutput cmd_table(std::size_t samples, const GlobalOptions& g) {
  return guarded([&]() -> CommandOutput {
    if (samples < 1) throw ParseError("--samples must be at least 1");
    constexpr std::size_t nc = kAllConditions.size();
    const auto& arrows = table1_arrows();
    constexpr std::size_t nfacts = 5;

    struct Tally {
      std::array<std::array<std::uint64_t, nc>, nc> matrix{};
      std::array<std::uint64_t, nc> holds{};
      std::array<std::uint64_t, nfacts> fact_violations{};
      std::array<std::string, nfacts> fact_names{};
    };
    const int workers = resolve_threads(g.threads);
    std::vector<Tally> partial(static_cast<std::size_t>(std::max(1, workers)));
    parallel_chunks(samples, workers, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
      Tally t;
      for (std::size_t i = begin; i < end; ++i) {
        const BergerForm bf = mixture_sample(g.seed, i);
        std::array<bool, nc> h{};
        for (std::size_t c = 0; c < nc; ++c) {
          h[c] = condition_margin(bf, kAllConditions[c]).holds(g.tol);
          t.holds[c] += h[c];
        }
        for (std::size_t x = 0; x < nc; ++x)
          for (std::size_t y = 0; y < nc; ++y) t.matrix[x][y] += h[x] && !h[y];
        const auto facts = pointwise_facts(bf, fact_delta(g.seed, i));
        for (std::size_t f = 0; f < nfacts && f < facts.size(); ++f) {
          t.fact_names[f] = facts[f].name;
          t.fact_violations[f] += !facts[f].holds;
        }
      }
      partial[chunk] = std::move(t);
    });
    Tally total;
    for (const Tally& t : partial) {
      for (std::size_t x = 0; x < nc; ++x) {
        total.holds[x] += t.holds[x];
        for (std::size_t y = 0; y < nc; ++y) total.matrix[x][y] += t.matrix[x][y];
      }
      for (std::size_t f = 0; f < nfacts; ++f) {
        total.fact_violations[f] += t.fact_violations[f];
        if (!t.fact_names[f].empty()) total.fact_names[f] = t.fact_names[f];
      }
    }

    auto index_of = [](const std::string& id) -> std::optional<std::size_t> {
      for (std::size_t c = 0; c < nc; ++c)
        if (condition_id(kAllConditions[c]) == id) return c;
      return std::nullopt;
    };

    Report r;
    r["command"] = "table";
    r["samples"] = samples;
    r["seed"] = g.seed;
    r["strictness_tol"] = number(g.tol);
    Report holds = Report::object();
    for (std::size_t c = 0; c < nc; ++c) holds[std::string(condition_id(kAllConditions[c]))] = total.holds[c];
    r["condition_counts"] = holds;

    bool violated = false;
    Report arrow_list = Report::array();
    for (const TableArrow& a : arrows) {
      Report e;
      e["arrow"] = a.antecedent + " => " + a.consequent;
      e["scope"] = std::string(scope_name(a.scope));
      const auto x = index_of(a.antecedent);
      const auto y = index_of(a.consequent);
      if (a.scope == ArrowScope::not_evaluated || !x || !y) {
        e["counterexamples"] = nullptr;
        e["status"] = "not evaluated";
      } else {
        const std::uint64_t n = total.matrix[*x][*y];
        e["counterexamples"] = n;
        if (a.scope == ArrowScope::global) {
          e["status"] = "global - see verify-bounds";
        } else {
          e["status"] = n == 0 ? "ok" : "VIOLATED";
          violated |= n != 0;
        }
      }
      arrow_list.push_back(e);
    }
    r["arrows"] = arrow_list;

    Report facts = Report::array();
    for (std::size_t f = 0; f < nfacts; ++f) {
      facts.push_back({{"fact", total.fact_names[f]}, {"violations", total.fact_violations[f]}});
      violated |= total.fact_violations[f] != 0;
    }
    r["facts"] = facts;

    Report ids = Report::array();
    for (Condition c : kAllConditions) ids.push_back(std::string(condition_id(c)));
    Report matrix = Report::array();
    for (std::size_t x = 0; x < nc; ++x) {
      Report row = Report::array();
      for (std::size_t y = 0; y < nc; ++y) row.push_back(total.matrix[x][y]);
      matrix.push_back(row);
    }
    r["matrix"] = {{"meaning", "row holds and column fails"}, {"conditions", ids}, {"counts", matrix}};
    return {render(r, g.machine), "", violated ? kExitAssertFailed : kExitOk};
  });
}

}  // namespace curv4::cli
