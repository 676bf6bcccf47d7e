#include "curv4/cli/commands.hpp"
#include "curv4/cli/document.hpp"
#include "curv4/errors.hpp"
#include "curv4/predicates.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace curv4;
using namespace curv4::cli;

namespace {

const std::string kData = CURV4_DATA_DIR;

std::string data(const std::string& name) { return kData + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("curv4_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kNonEinstein = R"({"format_version": 1, "riemann": {"components": [
  {"indices": [1, 2, 1, 2], "value": 1}, {"indices": [1, 3, 1, 3], "value": 1},
  {"indices": [1, 4, 1, 4], "value": 1}]}})";

int run_binary(const std::string& args) {
  const std::string cmd = std::string(CURV4_BINARY) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Document, BergerFiles) {
  const InputDocument cp2 = load_document(data("cp2.json"));
  ASSERT_TRUE(cp2.berger.has_value());
  EXPECT_NEAR(cp2.berger->a()[2], 2.0 / 3.0, 1e-15);
  const InputDocument s4 = load_document(data("s4.json"));
  EXPECT_NEAR(s4.berger_form(1e-9).a()[0], 1.0 / 3.0, 1e-15);
  EXPECT_NO_THROW(load_document(data("sampled.json")));
}

TEST(Document, RiemannFilledBySymmetry) {
  const InputDocument doc = load_document(data("s2xs2.json"));
  ASSERT_TRUE(doc.riemann.has_value());
  EXPECT_EQ((*doc.riemann - test::sphere_product_tensor()).max_abs(), 0.0);
  const BergerForm bf = doc.berger_form(1e-9);
  EXPECT_NEAR(bf.a()[0], 0.0, 1e-12);
  EXPECT_NEAR(bf.a()[2], 1.0, 1e-12);
}

TEST(Document, ConsistentDuplicatesAccepted) {
  const InputDocument doc = parse_document(R"({"format_version": 1, "riemann": {"components": [
    {"indices": [1, 2, 1, 2], "value": 1}, {"indices": [2, 1, 1, 2], "value": -1},
    {"indices": [2, 1, 2, 1], "value": 1}]}})");
  EXPECT_EQ((*doc.riemann)(1, 0, 1, 0), 1.0);
}

TEST(Document, Rejections) {
  const std::vector<std::string> bad{
      "not json",
      R"([1, 2])",
      R"({"berger": {"lambda": 1, "a": [0.3, 0.3, 0.4], "b": [0, 0, 0]}})",
      R"({"format_version": 2, "berger": {"lambda": 1, "a": [0.3, 0.3, 0.4], "b": [0, 0, 0]}})",
      R"({"format_version": 1})",
      R"({"format_version": 1, "berger": {"lambda": 1, "a": [0.3, 0.3, 0.4], "b": [0, 0, 0]},
          "riemann": {"components": []}})",
      R"({"format_version": 1, "extra": 0, "berger": {"lambda": 1, "a": [0.3, 0.3, 0.4], "b": [0, 0, 0]}})",
      R"({"format_version": 1, "berger": {"lambda": 1, "a": [0.4, 0.3, 0.3], "b": [0, 0, 0]}})",
      R"({"format_version": 1, "berger": {"lambda": 1, "a": [0.3, 0.3], "b": [0, 0, 0]}})",
      R"({"format_version": 1, "berger": {"lambda": 0, "a": [0, 0, 0], "b": [0, 0, 0]}})",
      R"({"format_version": 1, "riemann": {"components": [{"indices": [1, 2, 1, 5], "value": 1}]}})",
      R"({"format_version": 1, "riemann": {"components": [{"indices": [1, 1, 2, 3], "value": 1}]}})",
      R"({"format_version": 1, "riemann": {"components": [{"indices": [1, 2, 3, 4], "value": 1}]}})",
      R"({"format_version": 1, "riemann": {"components": [
          {"indices": [1, 2, 1, 2], "value": 1}, {"indices": [2, 1, 2, 1], "value": 2}]}})",
      R"({"format_version": 1, "riemann": {"components": [
          {"indices": [1, 2, 1, 2], "value": 1}, {"indices": [2, 1, 1, 2], "value": 1}]}})",
      R"({"format_version": 1, "tol": -1, "berger": {"lambda": 1, "a": [0.3, 0.3, 0.4], "b": [0, 0, 0]}})",
  };
  for (const std::string& text : bad) EXPECT_THROW(parse_document(text), ParseError) << text;
}

TEST(Document, NonEinsteinReportsResidual) {
  const InputDocument doc = parse_document(kNonEinstein);
  EXPECT_THROW(doc.berger_form(1e-9), NonEinsteinError);
}

TEST(Document, EmitParseRoundTrip) {
  // emit(parse(doc)) is the canonical form of doc.
  const InputDocument doc = parse_document(R"({"format_version": 1, "riemann": {"components": [
    {"indices": [2, 1, 2, 1], "value": 1}, {"indices": [4, 3, 4, 3], "value": 1}]}})");
  const auto emitted = emit_document(doc);
  EXPECT_EQ(emitted.dump(),
            R"({"format_version":1,"riemann":{"components":[{"indices":[1,2,1,2],"value":1.0},)"
            R"({"indices":[3,4,3,4],"value":1.0}]}})");
  const InputDocument again = parse_document(emitted.dump());
  EXPECT_EQ(emit_document(again), emitted);

  for (std::uint64_t i = 0; i < 50; ++i) {
    InputDocument r;
    r.riemann = test::random_tensor(61, i);
    const InputDocument back = parse_document(emit_document(r).dump());
    EXPECT_EQ((*back.riemann - *r.riemann).max_abs(), 0.0);
    InputDocument b;
    b.berger = mixture_sample(62, i);
    EXPECT_EQ(emit_document(parse_document(emit_document(b).dump())), emit_document(b));
  }
}

TEST(Commands, CheckAssertions) {
  const GlobalOptions g;
  EXPECT_EQ(cmd_check(data("cp2.json"), "3-positive", g).exit_code, kExitOk);
  EXPECT_EQ(cmd_check(data("cp2.json"), "2-positive", g).exit_code, kExitAssertFailed);
  EXPECT_EQ(cmd_check(data("s4.json"), "pic", g).exit_code, kExitOk);
  EXPECT_EQ(cmd_check(data("s2xs2.json"), "4-positive", g).exit_code, kExitAssertFailed);
  EXPECT_EQ(cmd_check(data("s2xs2.json"), "6-positive", g).exit_code, kExitOk);
  EXPECT_EQ(cmd_check(data("cp2.json"), "9-positive", g).exit_code, kExitParseError);
  EXPECT_EQ(cmd_check(data("missing.json"), std::nullopt, g).exit_code, kExitParseError);
  EXPECT_EQ(cmd_check(write_temp("ne.json", kNonEinstein), std::nullopt, g).exit_code, kExitNonEinstein);
}

TEST(Commands, CheckMachineOutput) {
  GlobalOptions g;
  g.machine = true;
  const CommandOutput out = cmd_check(data("cp2.json"), "3-positive", g);
  const auto j = nlohmann::json::parse(out.out);
  EXPECT_EQ(j["assert"]["result"], "pass");
  EXPECT_NEAR(j["assert"]["margin"].get<double>(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(j["pic_frames"]["half_frame_margin"].get<double>(), 0.0, 1e-12);
}

TEST(Commands, Decompose) {
  GlobalOptions g;
  g.machine = true;
  const auto cp2 = nlohmann::json::parse(cmd_decompose(data("cp2.json"), g).out);
  EXPECT_NEAR(cp2["berger"]["a"][0].get<double>(), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(cp2["berger"]["b"][2].get<double>(), 1.0 / 3.0, 1e-12);
  const auto s2 = nlohmann::json::parse(cmd_decompose(data("s2xs2.json"), g).out);
  EXPECT_NEAR(s2["berger"]["a"][0].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(s2["berger"]["a"][2].get<double>(), 1.0, 1e-12);
  const auto s4 = nlohmann::json::parse(cmd_decompose(data("s4.json"), g).out);
  EXPECT_NEAR(s4["berger"]["a"][1].get<double>(), 1.0 / 3.0, 1e-12);

  const CommandOutput ne = cmd_decompose(write_temp("ne2.json", kNonEinstein), g);
  EXPECT_EQ(ne.exit_code, kExitNonEinstein);
  EXPECT_EQ(nlohmann::json::parse(ne.out)["berger"]["status"], "not Einstein");
}

TEST(Commands, SampleDeterministicAndFiltered) {
  GlobalOptions g;
  g.seed = 7;
  const CommandOutput a = cmd_sample(5, std::nullopt, g);
  const CommandOutput b = cmd_sample(5, std::nullopt, g);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(lines(a.out).size(), 5u);
  for (const std::string& line : lines(a.out)) EXPECT_NO_THROW(parse_document(line));

  const CommandOutput three = cmd_sample(100, "3-positive", g);
  EXPECT_EQ(three.exit_code, kExitOk);
  ASSERT_EQ(lines(three.out).size(), 100u);
  for (const std::string& line : lines(three.out))
    EXPECT_TRUE(k_positive_margin(*parse_document(line).berger, 3).holds(g.tol));

  const auto all = lines(cmd_sample(2000, std::nullopt, g).out);
  const std::set<std::string> unfiltered(all.begin(), all.end());
  const CommandOutput pic = cmd_sample(20, "pic", g);
  for (const std::string& line : lines(pic.out)) EXPECT_TRUE(unfiltered.count(line)) << line;
  EXPECT_NE(pic.err.find("acceptance rate"), std::string::npos);

  EXPECT_EQ(cmd_sample(5, "bogus", g).exit_code, kExitParseError);
  EXPECT_EQ(cmd_sample(0, std::nullopt, g).exit_code, kExitParseError);
}

TEST(Commands, TableDeterministicAcrossThreads) {
  GlobalOptions g;
  g.threads = 1;
  const CommandOutput one = cmd_table(5000, g);
  g.threads = 8;
  const CommandOutput many = cmd_table(5000, g);
  EXPECT_EQ(one.exit_code, kExitOk);
  EXPECT_EQ(one.out, many.out);
  g.machine = true;
  const auto j = nlohmann::json::parse(cmd_table(5000, g).out);
  for (const auto& arrow : j["arrows"]) {
    if (arrow["scope"] == "pointwise") {
      EXPECT_EQ(arrow["counterexamples"], 0) << arrow["arrow"];
    }
  }
}

TEST(Commands, VerifyBoundsErrors) {
  GlobalOptions g;
  EXPECT_EQ(cmd_verify_bounds("thm9", std::nullopt, g).exit_code, kExitParseError);
  g.grid = 4;
  EXPECT_EQ(cmd_verify_bounds("prop13", std::nullopt, g).exit_code, kExitParseError);
  g.grid.reset();
  EXPECT_EQ(cmd_verify_bounds("prop13", -0.5, g).exit_code, kExitInfeasible);
}

TEST(Commands, VerifyBoundsSinglePoint) {
  GlobalOptions g;
  g.machine = true;
  const CommandOutput out = cmd_verify_bounds("prop13", 0.6667, g);
  EXPECT_EQ(out.exit_code, kExitOk);
  const auto j = nlohmann::json::parse(out.out);
  EXPECT_NEAR(j["prop13"]["point"]["numeric"].get<double>(), -1.0 / 3.0, 1e-4);
}

TEST(Binary, ExitCodes) {
  EXPECT_EQ(run_binary("check " + data("cp2.json") + " --assert 3-positive"), 0);
  EXPECT_EQ(run_binary("check " + data("cp2.json") + " --assert 2-positive"), 1);
  EXPECT_EQ(run_binary("check " + data("missing.json")), 2);
  EXPECT_EQ(run_binary("--bogus-flag check " + data("cp2.json")), 2);
  EXPECT_EQ(run_binary("--isa neon sample"), 2);
  EXPECT_EQ(run_binary(""), 2);
  EXPECT_EQ(run_binary("check " + write_temp("ne3.json", kNonEinstein)), 3);
  EXPECT_EQ(run_binary("verify-bounds --which prop13 --lam3 -0.5"), 4);
  EXPECT_EQ(run_binary("--seed 3 sample --count 2"), 0);
  EXPECT_EQ(run_binary("--help"), 0);
}
