// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cstddef>
#include <iomanip>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "lts/coefficients.hpp"
#include "lts/experiments.hpp"
#include "lts/time_grid.hpp"
#include "lts/verification.hpp"

/// Text and CSV writers for coefficient dumps and experiment results.
namespace lts::output {

/// Exact full-step tables of every set over every step with enough
/// history at this order.
struct FullStepDump {
  std::size_t set = 0;
  std::size_t step = 0;
  BetaTable<Rational> table;
};

inline std::vector<FullStepDump> full_step_tables(const UnionGrid& grid,
                                                  const std::size_t order) {
  std::vector<FullStepDump> dumps;
  for (std::size_t s = 0; s < grid.num_sets(); ++s) {
    for (const std::size_t m : verification::valid_full_steps(grid, order, s)) {
      dumps.push_back(
          {s, m, accumulate_full_step<Rational>(grid, order, grid.set_id(s), m)});
    }
  }
  return dumps;
}

/// Tables in grid layout: for two sets, rows are first-set times and
/// columns second-set times; otherwise one line per entry.  Times are in
/// ticks.
inline void write_coefficient_layout(std::ostream& out, const UnionGrid& grid,
                                     const std::vector<FullStepDump>& dumps) {
  for (const auto& dump : dumps) {
    const auto& own = grid.set_times(dump.set);
    out << "set " << grid.set_id(dump.set) << ", step " << dump.step << ": "
        << own[dump.step] << " -> " << own[dump.step + 1] << '\n';
    if (grid.num_sets() != 2) {
      for (const auto& [q, value] : dump.table.entries) {
        out << "  (";
        for (std::size_t s = 0; s < q.size(); ++s) {
          out << (s == 0 ? "" : ", ") << grid.set_times(s)[q[s]];
        }
        out << "): " << to_string(value) << '\n';
      }
      out << '\n';
      continue;
    }
    std::set<std::size_t> rows;
    std::set<std::size_t> cols;
    for (const auto& [q, value] : dump.table.entries) {
      rows.insert(q[0]);
      cols.insert(q[1]);
    }
    constexpr int width = 10;
    out << std::setw(width) << "A \\ B";
    for (auto c = cols.rbegin(); c != cols.rend(); ++c) {
      out << std::setw(width) << grid.set_times(1)[*c];
    }
    out << '\n';
    for (auto r = rows.rbegin(); r != rows.rend(); ++r) {
      out << std::setw(width) << grid.set_times(0)[*r];
      for (auto c = cols.rbegin(); c != cols.rend(); ++c) {
        out << std::setw(width) << to_string(dump.table.at({*r, *c}));
      }
      out << '\n';
    }
    out << '\n';
  }
}

/// One row per nonzero entry: step id "set:step", the evaluation times of
/// each set joined by ';', and the exact value.
inline void write_coefficient_records(std::ostream& out, const UnionGrid& grid,
                                      const std::vector<FullStepDump>& dumps) {
  out << "step,q,numerator,denominator\n";
  for (const auto& dump : dumps) {
    for (const auto& [q, value] : dump.table.entries) {
      out << grid.set_id(dump.set) << ':' << dump.step << ',';
      for (std::size_t s = 0; s < q.size(); ++s) {
        out << (s == 0 ? "" : ";") << grid.set_times(s)[q[s]];
      }
      out << ',' << numerator_of(value) << ',' << denominator_of(value)
          << '\n';
    }
  }
}

inline void write_convergence(
    std::ostream& out,
    const std::vector<experiments::ConvergenceResult>& results) {
  out << "order,threshold,linf_error,total_steps,fitted_slope\n";
  const auto precision = out.precision(17);
  for (const auto& result : results) {
    for (const auto& point : result.points) {
      out << point.order << ',' << point.threshold << ',' << point.error << ','
          << point.total_steps << ',' << result.slope << '\n';
    }
  }
  out.precision(precision);
}

inline void write_conserved(std::ostream& out,
                            const experiments::RunReport& report) {
  out << "time,integral\n";
  const auto precision = out.precision(17);
  for (const auto& sample : report.conserved) {
    out << sample.time << ',' << sample.value << '\n';
  }
  out.precision(precision);
}

inline void write_step_log(std::ostream& out,
                           const experiments::RunReport& report) {
  out << "set,start_ticks,size_ticks\n";
  for (const auto& step : report.steps) {
    out << step.set << ',' << step.start << ',' << step.size << '\n';
  }
}

inline void write_step_counts(std::ostream& out,
                              const experiments::RunReport& report) {
  out << "set,steps\n";
  for (std::size_t s = 0; s < report.step_counts.size(); ++s) {
    out << s << ',' << report.step_counts[s] << '\n';
  }
}

inline void write_speed(std::ostream& out,
                        const experiments::SpeedComparison& comparison) {
  out << "mode,total_steps,volume_evaluations,coupling_evaluations,"
         "wall_seconds,linf_error\n";
  const auto precision = out.precision(17);
  for (const auto* report :
       {&comparison.gts, &comparison.lts, &comparison.lts_constant}) {
    out << experiments::mode_flag(report->config.mode) << ','
        << report->total_steps << ',' << report->evaluations.volume << ','
        << report->evaluations.coupling << ',' << report->wall_seconds << ','
        << report->linf_error << '\n';
  }
  out.precision(precision);
}

}  // namespace lts::output
