// Distributed under the MIT License.
// See LICENSE.txt for details.

// Command-line driver: coefficient dumps, single evolutions, convergence
// sweeps, conservation traces, GTS/LTS cost comparisons and the self-test.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lts/error.hpp"
#include "lts/experiments.hpp"
#include "lts/output.hpp"
#include "lts/selftest.hpp"
#include "lts/time_grid.hpp"

namespace {

namespace ex = lts::experiments;

// Flags that override the config file (or the problem defaults).
struct ConfigFlags {
  std::string config_file;
  std::optional<std::string> problem;
  std::optional<std::size_t> order;
  std::optional<std::size_t> elements;
  std::optional<std::size_t> nodes;
  std::optional<double> left;
  std::optional<double> right;
  std::optional<bool> periodic;
  std::optional<double> start;
  std::optional<double> end;
  std::optional<double> threshold;
  std::optional<std::string> mode;
  std::optional<std::int64_t> initial_step;
  std::optional<int> resolution_exponent;
  std::optional<std::string> output_dir;
  std::optional<std::uint64_t> seed;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "key = value run configuration")
        ->check(CLI::ExistingFile);
    app.add_option("--problem", problem, "bump | wave")
        ->check(CLI::IsMember({"bump", "wave"}));
    app.add_option("--order", order, "integration order")
        ->check(CLI::Range(1, 8));
    app.add_option("--elements", elements, "number of elements");
    app.add_option("--nodes", nodes, "LGL nodes per element");
    app.add_option("--left", left, "left end of the domain");
    app.add_option("--right", right, "right end of the domain");
    app.add_option("--periodic", periodic, "identify the domain ends");
    app.add_option("--start", start, "start time (dyadic)");
    app.add_option("--end", end, "end time (dyadic)");
    app.add_option("--threshold", threshold, "maximum allowed |u| dt");
    app.add_option("--mode", mode, "gts | lts | lts-constant")
        ->check(CLI::IsMember({"gts", "lts", "lts-constant"}));
    app.add_option("--initial-step", initial_step,
                   "initial step in ticks (power of two)");
    app.add_option("--resolution-exponent", resolution_exponent,
                   "tick size is 2^r seconds");
    app.add_option("--output-dir", output_dir, "directory for CSV output");
    app.add_option("--seed", seed, "seed for randomized checks");
  }

  ex::RunConfig resolve(ex::RunConfig config) const {
    if (problem) {
      ex::apply_setting(config, "problem", *problem);
    }
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      config = ex::load_config(in, config);
    }
    if (order) config.order = *order;
    if (elements) config.elements = *elements;
    if (nodes) config.nodes = *nodes;
    if (left) config.left = *left;
    if (right) config.right = *right;
    if (periodic) config.periodic = *periodic;
    if (start) config.start = *start;
    if (end) config.end = *end;
    if (threshold) config.threshold = *threshold;
    if (mode) config.mode = ex::parse_mode(*mode);
    if (initial_step) config.initial_step = *initial_step;
    if (resolution_exponent) config.resolution_exponent = *resolution_exponent;
    if (output_dir) config.output_dir = *output_dir;
    if (seed) config.seed = *seed;
    config.validate();
    return config;
  }
};

std::ofstream open_output(const ex::RunConfig& config,
                          const std::string& name) {
  std::filesystem::create_directories(config.output_dir);
  const auto path = std::filesystem::path(config.output_dir) / name;
  std::ofstream out(path);
  if (!out) {
    throw lts::Error(lts::ErrorKind::InvalidArgument,
                     "cannot write " + path.string());
  }
  std::cout << "wrote " << path.string() << '\n';
  return out;
}

void print_summary(const ex::RunReport& report) {
  std::cout << "problem " << ex::name(report.config.problem) << ", order "
            << report.config.order << ", mode "
            << ex::mode_flag(report.config.mode) << ", threshold "
            << report.config.threshold << '\n'
            << "total steps " << report.total_steps << ", evaluations "
            << report.evaluations.volume << " volume + "
            << report.evaluations.coupling << " coupling, wall "
            << report.wall_seconds << " s\n";
  if (!std::isnan(report.linf_error)) {
    std::cout << "max error " << report.linf_error << '\n';
  }
  if (!report.conserved.empty()) {
    std::cout << "max relative drift of the integral " << report.max_drift
              << '\n';
  }
}

int command_coeffs(const std::size_t order, const std::string& pattern,
               const std::string& records) {
  std::ifstream in(pattern);
  if (!in) {
    throw lts::Error(lts::ErrorKind::InvalidArgument,
                     "cannot read " + pattern);
  }
  const auto grid = lts::merge_union(lts::read_sequences(in));
  const auto dumps = lts::output::full_step_tables(grid, order);
  lts::output::write_coefficient_layout(std::cout, grid, dumps);
  std::ofstream out(records);
  lts::output::write_coefficient_records(out, grid, dumps);
  std::cout << "wrote " << records << '\n';
  return 0;
}

int command_evolve(const ex::RunConfig& config) {
  const auto report = ex::run(config, true, true);
  print_summary(report);
  {
    auto out = open_output(config, "snapshot.csv");
    lts::dg::write_snapshot(out, ex::make_system(config).mesh(),
                            report.final_state);
  }
  {
    auto out = open_output(config, "steps.csv");
    lts::output::write_step_log(out, report);
  }
  {
    auto out = open_output(config, "step_counts.csv");
    lts::output::write_step_counts(out, report);
  }
  auto out = open_output(config, "conserved.csv");
  lts::output::write_conserved(out, report);
  return 0;
}

int command_convergence(const ex::RunConfig& config,
                    const std::vector<std::size_t>& orders,
                    std::vector<double> thresholds) {
  std::vector<ex::ConvergenceResult> results;
  for (const std::size_t order : orders) {
    auto base = config;
    base.order = order;
    auto sweep = thresholds;
    if (sweep.empty()) {
      double largest = 0x1p-11;
      for (const auto& s : lts::selftest::default_sweeps()) {
        if (s.order == order) {
          largest = s.largest_threshold;
        }
      }
      sweep = lts::selftest::sweep_thresholds(largest);
    }
    results.push_back(ex::run_convergence(base, sweep));
    std::cout << "order " << order << ": slope " << results.back().slope
              << '\n';
  }
  auto out = open_output(config, "convergence.csv");
  lts::output::write_convergence(out, results);
  return 0;
}

int command_conserve(const ex::RunConfig& config) {
  const auto report = ex::run_conservation(config);
  print_summary(report);
  auto out = open_output(config, "conservation.csv");
  lts::output::write_conserved(out, report);
  return 0;
}

int command_speed(const ex::RunConfig& config) {
  const auto comparison = ex::run_speed(config);
  for (const auto* report :
       {&comparison.gts, &comparison.lts, &comparison.lts_constant}) {
    print_summary(*report);
  }
  std::cout << "GTS/LTS step ratio " << comparison.step_ratio
            << ", evaluation ratio " << comparison.evaluation_ratio
            << ", wall-time ratio " << comparison.wall_ratio << '\n';
  auto out = open_output(config, "speed.csv");
  lts::output::write_speed(out, comparison);
  return 0;
}

int command_selftest(const std::uint64_t seed, const bool quick) {
  namespace st = lts::selftest;
  const std::size_t grids = quick ? 50 : 500;
  std::vector<st::Gate> gates{st::golden_tables(),
                              st::volume_identity(grids, seed),
                              st::consistency(grids, seed + 1),
                              st::conservation(),
                              st::convergence(),
                              st::step_ratio(),
                              st::property_suites(quick ? 100 : 1000, seed + 2)};
  bool ok = true;
  for (const auto& gate : gates) {
    std::cout << (gate.passed ? "PASS" : "FAIL") << "  " << gate.name << ": "
              << gate.detail << " (" << gate.seconds << " s)\n";
    ok = ok && gate.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adams-Bashforth local time stepping for 1D Burgers"};
  app.require_subcommand(1);

  auto* coeffs = app.add_subcommand("coeffs", "dump exact full-step tables");
  std::size_t coeff_order = 2;
  std::string pattern;
  std::string records = "coefficients.csv";
  coeffs->add_option("--order", coeff_order, "integration order")
      ->required()
      ->check(CLI::Range(1, 8));
  coeffs->add_option("--pattern", pattern, "step pattern file")
      ->required()
      ->check(CLI::ExistingFile);
  coeffs->add_option("--records", records, "CSV records output path");

  ConfigFlags evolve_flags;
  auto* evolve = app.add_subcommand("evolve", "run one evolution");
  evolve_flags.attach(*evolve);

  ConfigFlags convergence_flags;
  std::vector<std::size_t> orders{4, 5, 6};
  std::vector<double> thresholds;
  auto* convergence =
      app.add_subcommand("convergence", "bump-problem error sweep");
  convergence_flags.attach(*convergence);
  convergence->add_option("--orders", orders, "orders to sweep");
  convergence->add_option("--thresholds", thresholds,
                          "thresholds (default: factor 8 in half-octaves)");

  ConfigFlags conserve_flags;
  auto* conserve =
      app.add_subcommand("conserve", "periodic-wave conservation trace");
  conserve_flags.attach(*conserve);

  ConfigFlags speed_flags;
  auto* speed = app.add_subcommand("speed", "GTS vs LTS step counts");
  speed_flags.attach(*speed);

  std::uint64_t selftest_seed = 1;
  bool quick = false;
  auto* selftest = app.add_subcommand("selftest", "run the built-in checks");
  selftest->add_option("--seed", selftest_seed, "seed for random grids");
  selftest->add_flag("--quick", quick, "smaller randomized suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*coeffs) {
      return command_coeffs(coeff_order, pattern, records);
    }
    if (*evolve) {
      return command_evolve(evolve_flags.resolve({}));
    }
    if (*convergence) {
      return command_convergence(
          convergence_flags.resolve(ex::bump_config(4, 0x1p-11)), orders,
          thresholds);
    }
    if (*conserve) {
      return command_conserve(conserve_flags.resolve(ex::wave_config(4, 0x1p-12)));
    }
    if (*speed) {
      return command_speed(speed_flags.resolve(ex::bump_config(5, 0x1p-12)));
    }
    if (*selftest) {
      return command_selftest(selftest_seed, quick);
    }
  } catch (const lts::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
