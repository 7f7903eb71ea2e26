#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "misolab/report.hpp"

using namespace misolab;

namespace {

struct Common {
  std::optional<unsigned> mmax;
  std::optional<double> tol;
  std::optional<std::size_t> window;
  std::string output;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_mmax = true, bool with_window = true) {
  if (with_mmax) cmd->add_option("--mmax", c.mmax, "largest order searched (default 2*dim+1)");
  cmd->add_option("--tol", c.tol, "Float-mode tolerance (default 1e-8)");
  if (with_window) cmd->add_option("--window", c.window, "orbit samples for difference tests");
  cmd->add_option("--output", c.output, "write the JSON report to this path");
  cmd->add_flag("--json", c.json, "print the JSON report instead of the summary");
}

AnalysisFlags flags_of(const Common& c) { return {c.mmax, c.tol, c.window}; }

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("MISOLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ParseError(std::string("MISOLAB_SEED is not an integer: ") + env);
    }
  }
  return seed;
}

int emit(const AnalysisReport& report, const Common& c) {
  if (!c.output.empty()) {
    std::ofstream out(c.output);
    if (!out) throw ParseError("cannot write " + c.output);
    out << report.json.dump(2) << "\n";
  }
  if (c.json) {
    std::cout << report.json.dump(2) << "\n";
  } else {
    std::cout << report.human;
  }
  return report.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"misolab: m-isometric operator analysis"};
  app.require_subcommand(1);

  Common order_c, dec_c, shift_c, ortho_c, pert_c, verify_c;
  std::string order_file, dec_file, shift_file, ortho_file, pert_a, pert_n;
  unsigned shift_m = 1;
  std::size_t basis_count = 4;
  std::string h1, h2, z1, z2;
  std::optional<std::string> eps;
  std::uint64_t ortho_seed = 0;
  std::string suite = "all";
  std::uint64_t verify_seed = 0;

  auto* order = app.add_subcommand("order", "strict order and orbit degrees");
  order->add_option("file", order_file, "operator spec (JSON)")->required();
  add_common(order, order_c);

  auto* dec = app.add_subcommand("decompose", "unimodular-plus-nilpotent decomposition");
  dec->add_option("file", dec_file, "operator spec (JSON)")->required();
  add_common(dec, dec_c, true, false);

  auto* shift = app.add_subcommand("shift", "m-isometry test for a polynomial weighted shift");
  shift->add_option("file", shift_file, "shift spec (JSON)")->required();
  shift->add_option("--m", shift_m, "order to test")->required();
  shift->add_option("--basis-count", basis_count, "basis vectors e_0..e_{k-1} examined");
  add_common(shift, shift_c, false, true);

  auto* ortho = app.add_subcommand("ortho", "orthogonality of two generalized eigenvectors");
  ortho->add_option("file", ortho_file, "operator spec (JSON)")->required();
  ortho->add_option("--h1", h1, "first vector, comma separated")->required();
  ortho->add_option("--h2", h2, "second vector, comma separated")->required();
  ortho->add_option("--z1", z1, "eigenvalue of h1")->required();
  ortho->add_option("--z2", z2, "eigenvalue of h2")->required();
  ortho->add_option("--eps", eps, "epsilon pair for z1 = -z2, e.g. 1,i");
  ortho->add_option("--seed", ortho_seed, "seed for sampled conditions");
  add_common(ortho, ortho_c, false, true);

  auto* pert = app.add_subcommand("perturb", "order of A + N for commuting nilpotent N");
  pert->add_option("a", pert_a, "spec of A")->required();
  pert->add_option("n", pert_n, "spec of N")->required();
  add_common(pert, pert_c, true, false);

  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--seed", verify_seed, "deterministic seed (MISOLAB_SEED overrides)");
  verify->add_option("--output", verify_c.output, "write the JSON report to this path");
  verify->add_flag("--json", verify_c.json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::kParse;
  }

  try {
    if (order->parsed()) return emit(cmd_order(load_spec(order_file), flags_of(order_c)), order_c);
    if (dec->parsed()) return emit(cmd_decompose(load_spec(dec_file), flags_of(dec_c)), dec_c);
    if (shift->parsed()) {
      return emit(cmd_shift(load_spec(shift_file), {flags_of(shift_c), shift_m, basis_count}),
                  shift_c);
    }
    if (ortho->parsed()) {
      OrthoFlags f{flags_of(ortho_c), h1, h2, z1, z2, eps, effective_seed(ortho_seed)};
      return emit(cmd_ortho(load_spec(ortho_file), f), ortho_c);
    }
    if (pert->parsed()) {
      return emit(cmd_perturb(load_spec(pert_a), load_spec(pert_n), flags_of(pert_c)), pert_c);
    }
    if (verify->parsed()) return emit(cmd_verify(suite, effective_seed(verify_seed)), verify_c);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_code::kParse;
  } catch (const Error& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return exit_code::kPrecondition;
  }
  return exit_code::kOk;
}
