#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "commands.hpp"

namespace {

using addbasis::cli::Outcome;

std::string quote_argument(const std::string& arg) {
  if (!arg.empty() && arg.find_first_of(" \t\"'\\$") == std::string::npos) return arg;
  std::string out = "'";
  for (char c : arg) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string command_echo(int argc, char** argv) {
  std::string echo = "addbasis";
  for (int i = 1; i < argc; ++i) echo += " " + quote_argument(argv[i]);
  return echo;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw addbasis::ParseError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = addbasis::cli;

  CLI::App app{"Exact additive k-basis constructions, verification and search"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("addbasis ") + addbasis::kVersion);

  std::size_t threads = 1;
  std::uint64_t seed = 0;
  std::string json_out;
  std::string csv_out;
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Seed for generators, sweeps and randomized probes");
  app.add_option("--json-out", json_out, "Also write the report to this path");
  app.add_option("--csv-out", csv_out, "Write sweep rows as CSV to this path");

  // solve
  cli::SolveOptions solve_opt;
  std::string solve_scale;
  auto* solve = app.add_subcommand("solve", "Minimum k-basis of a target set over a finite ground set");
  solve->add_option("--input", solve_opt.input, "BasisInstance JSON")->required();
  solve->add_option("--window-multiplier", solve_opt.window_multiplier, "Integer window is [-M max|A|, M max|A|]");
  solve->add_option("--node-budget", solve_opt.node_budget, "Search node limit");
  solve->add_option("--scale", solve_scale, "Common denominator for domain Q");

  // construct
  cli::ConstructOptions construct_opt;
  std::string construct_targets;
  auto* construct = app.add_subcommand("construct", "Build a basis with one of the constructions and check it");
  construct->add_option("method", construct_opt.method, "round | dyadic | higher | natural")
      ->required()
      ->check(CLI::IsMember({"round", "dyadic", "higher", "natural"}));
  construct->add_option("--input", construct_opt.input, "Basis B as a JSON set (or an object with B/basis/C)")
      ->required();
  construct->add_option("--k", construct_opt.k, "Order k")->check(CLI::PositiveNumber);
  construct->add_option("--targets", construct_targets, "Target set A (natural construction)");
  construct->add_flag("--emit-certificates", construct_opt.emit_certificates, "Include one certificate per target");
  construct->add_flag("--skip-verify", construct_opt.skip_verify, "Do not enumerate and check the promised targets");

  // verify
  cli::VerifyOptions verify_opt;
  auto* verify = app.add_subcommand("verify", "Check A ⊆ kB with certificates");
  verify->add_option("--basis", verify_opt.basis, "Basis B")->required();
  verify->add_option("--targets", verify_opt.targets, "Target set A")->required();
  verify->add_option("--k", verify_opt.k, "Order k")->check(CLI::PositiveNumber);
  verify->add_flag("--emit-certificates", verify_opt.emit_certificates, "Include one certificate per target");

  // gen
  cli::GenOptions gen_opt;
  std::uint64_t gen_mag = 0;
  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("family", gen_opt.family, "power-family | random-basis | signed-basis")
      ->required()
      ->check(CLI::IsMember({"power-family", "random-basis", "signed-basis"}));
  gen->add_option("--n", gen_opt.n, "Size parameter")->required();
  gen->add_option("--k", gen_opt.k, "Order recorded in the instance");
  gen->add_option("--base", gen_opt.base, "Power-family base");
  gen->add_option("--denom", gen_opt.denominator_bound, "Denominator bound");
  auto* gen_mag_opt = gen->add_option("--mag", gen_mag, "Magnitude bound");
  gen->add_flag("--non-negative", gen_opt.non_negative, "Random basis drawn from non-negative values");

  // probe
  auto* probe = app.add_subcommand("probe", "Vector-model checks and searches");
  probe->require_subcommand(1);
  probe->fallthrough();
  std::string vector_input;
  auto* vector_cover = probe->add_subcommand("vector-cover", "Check a vector family's covering condition");
  vector_cover->add_option("--input", vector_input, "VectorFamily JSON")->required();
  cli::TwoSetProbeOptions two_set_opt;
  auto* conjecture = probe->add_subcommand("conjecture1", "Grid search for two small sets covering e_i + e_j");
  conjecture->add_option("--n", two_set_opt.n, "Dimension")->required();
  conjecture->add_option("--sizes", two_set_opt.sizes, "s0,s1")->required();
  conjecture->add_option("--coord-bound", two_set_opt.coordinate_bound, "Coordinate magnitude bound");
  conjecture->add_option("--denom-bound", two_set_opt.denominator_bound, "Denominator bound");
  conjecture->add_option("--budget", two_set_opt.budget, "Search node limit");
  auto* parity = probe->add_subcommand("lemma2", "Parity systems: solvable jointly over Z, never singly");

  // sweep
  cli::SweepOptions sweep_opt;
  std::uint64_t sweep_mag = 0;
  auto* sweep = app.add_subcommand("sweep", "Run a construction over a grid of sizes and orders");
  sweep->add_option("--family", sweep_opt.family, "power-family | random-basis | signed-basis");
  sweep->add_option("--construction", sweep_opt.construction, "round | dyadic | higher | natural");
  sweep->add_option("--n", sweep_opt.n_values, "Sizes, e.g. 4,8,16 or 2..5");
  sweep->add_option("--k", sweep_opt.k_values, "Orders, e.g. 2,3");
  sweep->add_option("--seeds", sweep_opt.seeds, "Seeds per grid point");
  sweep->add_option("--denom", sweep_opt.denominator_bound, "Denominator bound (random-basis)");
  auto* sweep_mag_opt = sweep->add_option("--mag", sweep_mag, "Magnitude bound");
  sweep->add_option("--base", sweep_opt.base, "Power-family base");
  sweep->add_option("--max-cells", sweep_opt.max_cells, "Refuse sweeps with more grid points");

  for (auto* sub : {solve, construct, verify, gen, sweep}) sub->fallthrough();
  for (auto* sub : {vector_cover, conjecture, parity}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kInputError;
  }

  Outcome outcome;
  try {
    if (*solve) {
      if (!solve_scale.empty()) solve_opt.scale = solve_scale;
      outcome = cli::cmd_solve(solve_opt);
    } else if (*construct) {
      if (!construct_targets.empty()) construct_opt.targets = construct_targets;
      outcome = cli::cmd_construct(construct_opt);
    } else if (*verify) {
      outcome = cli::cmd_verify(verify_opt);
    } else if (*gen) {
      gen_opt.seed = seed;
      if (gen_mag_opt->count() > 0) gen_opt.magnitude_bound = gen_mag;
      outcome = cli::cmd_gen(gen_opt);
    } else if (*vector_cover) {
      outcome = cli::cmd_probe_vector_cover(vector_input);
    } else if (*conjecture) {
      two_set_opt.seed = seed;
      outcome = cli::cmd_probe_two_set(two_set_opt);
    } else if (*parity) {
      outcome = cli::cmd_probe_parity();
    } else if (*sweep) {
      sweep_opt.seed = seed;
      sweep_opt.threads = threads;
      if (sweep_mag_opt->count() > 0) sweep_opt.magnitude_bound = sweep_mag;
      outcome = cli::cmd_sweep(sweep_opt);
    }
  } catch (const cli::GuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kGuardError;
  } catch (const addbasis::InvalidParameter& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kGuardError;
  } catch (const addbasis::ResourceLimit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kBudgetExhausted;
  } catch (const addbasis::ConstructionFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kFalse;
  } catch (const addbasis::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return cli::kInputError;
  }

  const std::string report = cli::make_report(command_echo(argc, argv), outcome).dump(2) + "\n";
  std::cout << report;
  try {
    if (!json_out.empty()) write_text(json_out, report);
    if (!csv_out.empty()) {
      if (outcome.csv.empty()) {
        std::cerr << "warning: this command produces no CSV; --csv-out ignored\n";
      } else {
        write_text(csv_out, outcome.csv);
      }
    }
  } catch (const addbasis::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputError;
  }
  return outcome.exit_code;
}
