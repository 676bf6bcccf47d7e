// curv4: curvature algebra of Einstein four-manifolds from the command line.

#include "curv4/cli/commands.hpp"
#include "curv4/kernels.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

int main(int argc, char** argv) {
  using namespace curv4::cli;

  CLI::App app{"Curvature algebra of Einstein four-manifolds.\n"
               "Riemann input uses 1-based indices and the sign convention R(i,j,i,j) = K(e_i, e_j)."};
  app.require_subcommand(1);

  GlobalOptions g;
  int grid = 0;
  int depth = -1;
  std::string isa;
  app.add_option("--tol", g.tol, "Tolerance for symmetry/Einstein checks and strict margins")
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for sampling and frame shifts")->capture_default_str();
  app.add_flag("--machine", g.machine, "Emit JSON instead of text");
  app.add_option("--grid", grid, "Grid points per axis for optimisations (>= 8)");
  app.add_option("--depth", depth, "Refinement rounds for optimisations (>= 0)");
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)")->capture_default_str();
  app.add_option("--isa", isa, "Kernel variant: scalar or avx2 (default: detected)");

  std::string path;
  auto* decompose = app.add_subcommand("decompose", "Standard, duality and Berger decompositions");
  decompose->add_option("file", path, "Input document")->required();

  std::string assert_condition;
  auto* check = app.add_subcommand("check", "Curvature conditions and implication report");
  check->add_option("file", path, "Input document")->required();
  check->add_option("--assert", assert_condition,
                    "Exit 1 unless this condition's margin exceeds --tol "
                    "(positive, 2-positive, 3-positive, 4-positive, 6-positive, pic, half-pic+, "
                    "half-pic-, K>0, K>1/12, K>1/30, K<1, R>0)");

  std::string which = "all";
  double lam3 = 0.0;
  auto* verify = app.add_subcommand("verify-bounds", "Run the curvature-bound optimisations");
  verify->add_option("--which", which, "all, thm2, thm3, prop12 or prop13")->capture_default_str();
  auto* lam3_opt = verify->add_option("--lam3", lam3, "Single top W eigenvalue for prop13");

  std::size_t count = 10;
  std::string condition;
  auto* sample = app.add_subcommand("sample", "Print admissible Berger documents, one per line");
  sample->add_option("--count", count, "Number of documents")->capture_default_str();
  sample->add_option("--condition", condition, "Keep only forms satisfying this condition");

  std::size_t samples = 100000;
  auto* table = app.add_subcommand("table", "Implication counts over sampled forms");
  table->add_option("--samples", samples, "Number of sampled forms")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParseError;
  }

  if (app.count("--grid")) g.grid = grid;
  if (app.count("--depth")) g.depth = depth;
  if (!isa.empty()) {
    const auto parsed = curv4::kernels::parse_isa(isa);
    if (!parsed) {
      std::cerr << "error: unknown --isa \"" << isa << "\"\n";
      return kExitParseError;
    }
    curv4::kernels::set_isa_override(parsed);
  }

  CommandOutput result;
  if (*decompose) {
    result = cmd_decompose(path, g);
  } else if (*check) {
    result = cmd_check(path, check->count("--assert") ? std::optional(assert_condition) : std::nullopt, g);
  } else if (*verify) {
    result = cmd_verify_bounds(which, lam3_opt->count() ? std::optional(lam3) : std::nullopt, g);
  } else if (*sample) {
    result = cmd_sample(count, sample->count("--condition") ? std::optional(condition) : std::nullopt, g);
  } else if (*table) {
    result = cmd_table(samples, g);
  }
  std::fwrite(result.out.data(), 1, result.out.size(), stdout);
  std::fwrite(result.err.data(), 1, result.err.size(), stderr);
  return result.exit_code;
}
