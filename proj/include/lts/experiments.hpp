// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <string>
#include <vector>

#include "lts/dg/burgers.hpp"
#include "lts/error.hpp"
#include "lts/integrator.hpp"
#include "lts/time_grid.hpp"

/// End-to-end Burgers runs: smooth-bump convergence, periodic-wave
/// conservation and GTS/LTS cost comparisons.
namespace lts::experiments {

enum class Problem { Bump, Wave };

inline const char* name(const Problem problem) {
  return problem == Problem::Bump ? "bump" : "wave";
}

struct RunConfig {
  std::size_t order = 4;
  Problem problem = Problem::Bump;
  std::size_t elements = 16;
  std::size_t nodes = 10;
  double left = -1.125;
  double right = 0.125;
  bool periodic = false;
  double start = -0.125;
  double end = 1.5;
  /// Steps satisfy max|u| * step <= threshold on each element.
  double threshold = 0x1p-12;
  SteppingMode mode = SteppingMode::Lts;
  std::int64_t initial_step = std::int64_t{1} << 13;
  int resolution_exponent = -40;
  std::string output_dir = ".";
  std::uint64_t seed = 1;

  /// Throws InvalidArgument or NonRepresentable.
  void validate() const {
    if (order < 1 || order > 8) {
      throw Error(ErrorKind::InvalidArgument, "order must be in [1, 8]");
    }
    if (elements == 0 || nodes < 2 || !(right > left)) {
      throw Error(ErrorKind::InvalidArgument, "bad mesh");
    }
    if (!(threshold > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "threshold must be positive");
    }
    if (end < start) {
      throw Error(ErrorKind::InvalidArgument, "end precedes start");
    }
    to_ticks(start, resolution_exponent);
    to_ticks(end, resolution_exponent);
  }
};

/// The smooth bump advected through an open domain.
inline RunConfig bump_config(const std::size_t order, const double threshold) {
  RunConfig config;
  config.order = order;
  config.threshold = threshold;
  return config;
}

/// The periodic wave run past shock formation.
inline RunConfig wave_config(const std::size_t order, const double threshold) {
  RunConfig config;
  config.order = order;
  config.threshold = threshold;
  config.problem = Problem::Wave;
  config.periodic = true;
  config.start = 0.0;
  config.end = 0.5;
  return config;
}

inline SteppingMode parse_mode(const std::string& text) {
  if (text == "gts") {
    return SteppingMode::Gts;
  }
  if (text == "lts") {
    return SteppingMode::Lts;
  }
  if (text == "lts-constant") {
    return SteppingMode::LtsConstantStep;
  }
  throw Error(ErrorKind::ParseError, "unknown stepping mode '" + text + "'");
}

inline const char* mode_flag(const SteppingMode mode) {
  switch (mode) {
    case SteppingMode::Gts:
      return "gts";
    case SteppingMode::Lts:
      return "lts";
    case SteppingMode::LtsConstantStep:
      return "lts-constant";
  }
  return "?";
}

/// Sets one field from its key.  Problem keys reset the problem defaults.
inline void apply_setting(RunConfig& config, const std::string& key,
                          const std::string& value) {
  try {
    if (key == "problem") {
      if (value == "bump") {
        config = bump_config(config.order, config.threshold);
      } else if (value == "wave") {
        config = wave_config(config.order, config.threshold);
      } else {
        throw Error(ErrorKind::ParseError, "unknown problem '" + value + "'");
      }
    } else if (key == "order") {
      config.order = std::stoul(value);
    } else if (key == "elements") {
      config.elements = std::stoul(value);
    } else if (key == "nodes") {
      config.nodes = std::stoul(value);
    } else if (key == "left") {
      config.left = std::stod(value);
    } else if (key == "right") {
      config.right = std::stod(value);
    } else if (key == "periodic") {
      config.periodic = value == "true" || value == "1";
    } else if (key == "start") {
      config.start = std::stod(value);
    } else if (key == "end") {
      config.end = std::stod(value);
    } else if (key == "threshold") {
      config.threshold = std::stod(value);
    } else if (key == "mode") {
      config.mode = parse_mode(value);
    } else if (key == "initial_step") {
      config.initial_step = std::stoll(value);
    } else if (key == "resolution_exponent") {
      config.resolution_exponent = std::stoi(value);
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else {
      throw Error(ErrorKind::ParseError, "unknown key '" + key + "'");
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError,
                "bad value '" + value + "' for '" + key + "'");
  }
}

/// Reads `key = value` lines ('#' starts a comment) on top of `config`.
inline RunConfig load_config(std::istream& in, RunConfig config = {}) {
  std::string line;
  std::size_t number = 0;
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      return std::string{};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
  };
  while (std::getline(in, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ParseError,
                  "line " + std::to_string(number) + ": expected key = value");
    }
    apply_setting(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

struct ConservedSample {
  double time = 0.0;
  double value = 0.0;
};

struct RunReport {
  RunConfig config;
  /// Max nodal error against the exact solution; NaN when none is known.
  double linf_error = std::numeric_limits<double>::quiet_NaN();
  /// Integral of u at every synchronized time, starting with the initial
  /// data.  Filled when requested.
  std::vector<ConservedSample> conserved;
  double max_drift = 0.0;
  std::vector<std::uint64_t> step_counts;
  std::uint64_t total_steps = 0;
  EvaluationCounts evaluations;
  double wall_seconds = 0.0;
  dg::FieldState final_state;
  std::vector<StepLogEntry> steps;
};

inline dg::BurgersSystem make_system(const RunConfig& config) {
  dg::DgMesh mesh(config.left, config.right, config.elements, config.nodes,
                  config.periodic);
  if (config.periodic) {
    return dg::BurgersSystem(std::move(mesh), config.threshold);
  }
  if (config.problem != Problem::Bump) {
    throw Error(ErrorKind::InvalidArgument,
                "open boundaries need the exact bump solution");
  }
  return dg::BurgersSystem(std::move(mesh), config.threshold,
                           dg::bump_solution);
}

inline dg::FieldState initial_data(const RunConfig& config,
                                   const dg::DgMesh& mesh) {
  if (config.problem == Problem::Bump) {
    return mesh.sample(
        [&](double x) { return dg::bump_solution(config.start, x); });
  }
  return mesh.sample(dg::wave_initial);
}

/// Evolves one configuration from start to end.
inline RunReport run(const RunConfig& config, const bool trace_conserved = false,
                     const bool log_steps = false) {
  config.validate();
  const auto clock_start = std::chrono::steady_clock::now();
  const dg::BurgersSystem system = make_system(config);
  const dg::DgMesh& mesh = system.mesh();

  EvolverOptions options;
  options.order = config.order;
  options.mode = config.mode;
  options.resolution_exponent = config.resolution_exponent;
  options.initial_step = config.initial_step;
  const std::int64_t start =
      to_ticks(config.start, config.resolution_exponent).ticks;
  const std::int64_t end =
      to_ticks(config.end, config.resolution_exponent).ticks;

  RunReport report;
  report.config = config;
  Evolver<dg::BurgersSystem> evolver(system, options, start,
                                     initial_data(config, mesh));
  if (log_steps) {
    evolver.set_step_logger(
        [&report](const StepLogEntry& entry) { report.steps.push_back(entry); });
  }
  const auto sample = [&](const auto& e) {
    if (trace_conserved && e.synchronized()) {
      report.conserved.push_back(
          {e.time_seconds(), dg::conserved_integral(mesh, e.states())});
    }
  };
  sample(evolver);
  evolver.run(end, sample);

  report.final_state = evolver.states();
  if (config.problem == Problem::Bump) {
    report.linf_error = 0.0;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
      for (std::size_t i = 0; i < mesh.nodes_per_element(); ++i) {
        const double exact =
            dg::bump_solution(config.end, mesh.coordinate(e, i));
        const double error = std::abs(report.final_state[e][i] - exact);
        if (!(error <= report.linf_error)) {
          report.linf_error = std::isnan(error) ? std::numeric_limits<double>::infinity() : error;
        }
      }
    }
  }
  if (!report.conserved.empty()) {
    const double initial = report.conserved.front().value;
    for (const auto& s : report.conserved) {
      const double drift = std::abs(s.value - initial) / std::abs(initial);
      if (!(drift <= report.max_drift)) {
        report.max_drift = std::isnan(drift)
                               ? std::numeric_limits<double>::infinity()
                               : drift;
      }
    }
  }
  report.step_counts = evolver.step_counts();
  report.total_steps = evolver.total_steps();
  report.evaluations = evolver.evaluations();
  report.wall_seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - clock_start)
                            .count();
  return report;
}

/// Least-squares slope of log(y) against log(x).
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "need at least two points");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "abscissae coincide");
  }
  return sxy / sxx;
}

struct ConvergencePoint {
  std::size_t order = 0;
  double threshold = 0.0;
  double error = 0.0;
  std::uint64_t total_steps = 0;
};

struct ConvergenceResult {
  std::size_t order = 0;
  std::vector<ConvergencePoint> points;
  double slope = 0.0;
};

/// Final-time errors of `base` over the thresholds, with the fitted slope.
inline ConvergenceResult run_convergence(RunConfig base,
                                         const std::vector<double>& thresholds) {
  ConvergenceResult result;
  result.order = base.order;
  std::vector<double> xs;
  std::vector<double> ys;
  for (const double threshold : thresholds) {
    base.threshold = threshold;
    const RunReport report = run(base);
    result.points.push_back(
        {base.order, threshold, report.linf_error, report.total_steps});
    xs.push_back(threshold);
    ys.push_back(report.linf_error);
  }
  if (xs.size() >= 2) {
    result.slope = fit_slope(xs, ys);
  }
  return result;
}

/// Runs with the conserved-integral trace enabled.
inline RunReport run_conservation(const RunConfig& config) {
  return run(config, true);
}

struct SpeedComparison {
  RunReport gts;
  RunReport lts;
  RunReport lts_constant;
  /// GTS over LTS totals.
  double step_ratio = 0.0;
  double evaluation_ratio = 0.0;
  double wall_ratio = 0.0;
};

/// The same problem with a shared step (the smallest step any element
/// needs), with independent steps, and with the LTS machinery on the
/// shared step.
inline SpeedComparison run_speed(RunConfig config) {
  SpeedComparison result;
  config.mode = SteppingMode::Gts;
  result.gts = run(config);
  config.mode = SteppingMode::Lts;
  result.lts = run(config);
  config.mode = SteppingMode::LtsConstantStep;
  result.lts_constant = run(config);
  const auto evaluations = [](const RunReport& r) {
    return static_cast<double>(r.evaluations.volume + r.evaluations.coupling);
  };
  result.step_ratio = static_cast<double>(result.gts.total_steps) /
                      static_cast<double>(result.lts.total_steps);
  result.evaluation_ratio = evaluations(result.gts) / evaluations(result.lts);
  result.wall_ratio = result.gts.wall_seconds / result.lts.wall_seconds;
  return result;
}

}  // namespace lts::experiments
