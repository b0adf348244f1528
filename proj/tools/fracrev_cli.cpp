// fracrev: command-line front end for the chain revival simulator.
//
//   fracrev trace     --config <file> [--out <dir>] [--threads <k>]
//   fracrev evolve    --config <file> [--out <dir>]
//   fracrev predict   --config <file> [--out <dir>]
//   fracrev sweep     --config <file> [--out <dir>] [--threads <k>]
//   fracrev budget    [--sites 500] [--hopping-mev 10] [--decoherence-ms 1] [--revivals 1]
//   fracrev reproduce <figure-id> [--out <dir>] [--threads <k>]
//
// --seed is accepted for interface compatibility; nothing here is random.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "fracrev/harness/budget.hpp"
#include "fracrev/harness/presets.hpp"
#include "fracrev/harness/scenario.hpp"

namespace {

using namespace fracrev::harness;

void report(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
}

void print_sweep(const SweepResult& r) {
  std::cout << "wrote " << r.written.string() << '\n';
  for (const auto& row : r.rows)
    std::cout << "  " << to_string(r.variable) << " = " << format_float(row.value) << "  " << to_string(r.metric)
              << " = " << format_float(row.metric) << '\n';
  std::cout << "  non_decreasing = " << (r.non_decreasing ? "yes" : "no")
            << ", non_increasing = " << (r.non_increasing ? "yes" : "no") << '\n';
}

void run_config(const Scenario& sc, const RunOptions& opt) {
  warn_containment(sc, std::cerr);
  if (sc.sweep) print_sweep(run_sweep(sc, opt));
  else report(run_trace(sc, opt));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-packet revivals on a tight-binding chain"};
  app.require_subcommand(1);
  app.fallthrough();

  unsigned threads = 1;
  std::string out_dir;
  long long seed = 0;
  app.add_option("--threads", threads, "worker threads for grid and sweep points")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "output directory (overrides output.dir)");
  app.add_option("--seed", seed, "accepted but unused: the simulator is deterministic");

  std::string config;
  auto add_config_cmd = [&](const std::string& name, const std::string& help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", config, "scenario file")->required()->check(CLI::ExistingFile);
    return cmd;
  };
  auto* evolve_cmd = add_config_cmd("evolve", "write |amplitude| profiles at each grid time");
  auto* trace_cmd = add_config_cmd("trace", "write the fidelity trace over the time grid");
  auto* predict_cmd = add_config_cmd("predict", "compare the analytic clone state with exact evolution");
  auto* sweep_cmd = add_config_cmd("sweep", "evaluate one metric over a parameter list");

  auto* budget_cmd = app.add_subcommand("budget", "revival period versus decoherence time");
  std::size_t b_sites = 500;
  double b_hopping = 10.0, b_decoherence = 1.0, b_revivals = 1.0;
  budget_cmd->add_option("--sites", b_sites, "chain length N")->check(CLI::PositiveNumber);
  budget_cmd->add_option("--hopping-mev", b_hopping, "hopping J in meV")->check(CLI::PositiveNumber);
  budget_cmd->add_option("--decoherence-ms", b_decoherence, "decoherence time in ms")->check(CLI::PositiveNumber);
  budget_cmd->add_option("--revivals", b_revivals, "full revivals required inside the decoherence time")
      ->check(CLI::PositiveNumber);

  auto* repro_cmd = app.add_subcommand("reproduce", "run a built-in figure scenario");
  std::string figure;
  std::vector<std::string> ids;
  for (const auto& [id, _] : presets()) ids.push_back(id);
  repro_cmd->add_option("figure-id", figure, "figure id")->required()->check(CLI::IsMember(ids));

  CLI11_PARSE(app, argc, argv);

  RunOptions opt;
  opt.threads = threads;
  if (!out_dir.empty()) opt.out_dir = out_dir;

  try {
    if (*budget_cmd) {
      print_budget(estimate_budget(b_sites, b_hopping, b_decoherence, b_revivals), std::cout);
    } else if (*repro_cmd) {
      const auto& configs = presets().at(figure);
      for (std::size_t i = 0; i < configs.size(); ++i)
        run_config(load_scenario_string(configs[i], "preset:" + figure), opt);
    } else {
      const auto sc = load_scenario_file(config);
      warn_containment(sc, std::cerr);
      if (*trace_cmd) {
        report(run_trace(sc, opt));
      } else if (*evolve_cmd) {
        report(run_evolve(sc, opt));
      } else if (*predict_cmd) {
        const auto r = run_predict(sc, opt);
        report(r.written);
        std::cout << "overlap_with_exact = " << format_float(r.overlap_with_exact) << '\n';
      } else if (*sweep_cmd) {
        print_sweep(run_sweep(sc, opt));
      }
    }
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
