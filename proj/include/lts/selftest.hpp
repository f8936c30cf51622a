// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lts/coefficients.hpp"
#include "lts/experiments.hpp"
#include "lts/lagrange.hpp"
#include "lts/reference_tables.hpp"
#include "lts/verification.hpp"

/// Self-contained end-to-end checks shared by the command-line `selftest`
/// and the acceptance binary.
namespace lts::selftest {

struct Gate {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {
template <typename F>
Gate timed(std::string name, F&& body) {
  Gate gate;
  gate.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(gate);
  } catch (const std::exception& e) {
    gate.passed = false;
    gate.detail = std::string("exception: ") + e.what();
  }
  gate.seconds = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return gate;
}

inline std::string format(const double value) {
  std::ostringstream out;
  out.precision(3);
  out << value;
  return out.str();
}

inline bool all_finite(const dg::FieldState& u) {
  for (const auto& element : u) {
    for (const double value : element) {
      if (!std::isfinite(value)) {
        return false;
      }
    }
  }
  return true;
}
}  // namespace detail

/// Every published two-set table regenerated exactly, within a second.
inline Gate golden_tables() {
  return detail::timed("golden coefficient tables", [](Gate& gate) {
    std::size_t compared = 0;
    std::size_t failed = 0;
    for (const auto& table : reference::tables()) {
      for (const int set : table.sets) {
        ++compared;
        if (!reference::compare(table, set).matches) {
          ++failed;
        }
      }
    }
    gate.passed = failed == 0;
    gate.detail = std::to_string(compared - failed) + "/" +
                  std::to_string(compared) + " tables match";
  });
}

/// Marginal of every defined full step equals the Adams-Bashforth weights
/// on random dyadic two-set grids.
inline Gate volume_identity(const std::size_t grids = 500,
                            const std::uint64_t seed = 1) {
  return detail::timed("volume identity", [&](Gate& gate) {
    std::mt19937_64 rng(seed);
    std::size_t checked = 0;
    std::size_t failed = 0;
    for (std::size_t g = 0; g < grids; ++g) {
      for (std::size_t order = 2; order <= 6; ++order) {
        const auto grid = merge_union(
            verification::random_dyadic_sequences(rng, 2, 2 * order + 3));
        for (std::size_t s = 0; s < 2; ++s) {
          for (const std::size_t m :
               verification::valid_full_steps(grid, order, s)) {
            if (m + 1 < order) {
              continue;
            }
            ++checked;
            if (!verification::volume_identity_holds(grid, order, s, m)) {
              ++failed;
            }
          }
        }
      }
    }
    gate.passed = failed == 0 && checked > 0;
    gate.detail = std::to_string(checked) + " full steps on " +
                  std::to_string(grids) + " grids, " + std::to_string(failed) +
                  " failures";
  });
}

/// Small-step tables integrate per-set monomial products exactly.
inline Gate consistency(const std::size_t grids = 500,
                        const std::uint64_t seed = 2) {
  return detail::timed("consistency monomials", [&](Gate& gate) {
    std::mt19937_64 rng(seed);
    std::size_t checked = 0;
    std::size_t failed = 0;
    for (std::size_t g = 0; g < grids; ++g) {
      for (std::size_t order = 2; order <= 6; ++order) {
        const auto grid = merge_union(
            verification::random_dyadic_sequences(rng, 2, order + 3));
        for (const std::size_t n :
             verification::valid_small_steps(grid, order)) {
          ++checked;
          if (!verification::consistency_holds(grid, order, n)) {
            ++failed;
          }
        }
      }
    }
    gate.passed = failed == 0 && checked > 0;
    gate.detail = std::to_string(checked) + " small steps on " +
                  std::to_string(grids) + " grids, " + std::to_string(failed) +
                  " failures";
  });
}

/// Integral of u on the periodic wave run past the shock.
inline Gate conservation(const double tolerance = 1e-11) {
  return detail::timed("conservation at roundoff", [&](Gate& gate) {
    const auto report =
        experiments::run_conservation(experiments::wave_config(4, 0x1p-12));
    const bool finite = detail::all_finite(report.final_state);
    gate.passed = finite && report.max_drift <= tolerance &&
                  report.conserved.size() > 1;
    gate.detail = "max relative drift " + detail::format(report.max_drift) +
                  " over " + std::to_string(report.conserved.size()) +
                  " synchronized samples" + (finite ? "" : ", non-finite state");
  });
}

struct ConvergenceSweep {
  std::size_t order;
  /// Largest threshold of the sweep; the rest follow in half-octaves over
  /// a factor of eight.
  double largest_threshold;
};

/// Largest power-of-two thresholds at which each order is stable on the
/// 16 x 10 bump mesh.
inline std::vector<ConvergenceSweep> default_sweeps() {
  return {{4, 0x1p-11}, {5, 0x1p-11}, {6, 0x1p-12}};
}

inline std::vector<double> sweep_thresholds(const double largest) {
  std::vector<double> thresholds;
  for (int j = 0; j <= 6; ++j) {
    thresholds.push_back(largest * std::exp2(-0.5 * j));
  }
  return thresholds;
}

/// Fitted convergence slope within half an order of nominal.
inline Gate convergence(
    const std::vector<ConvergenceSweep>& sweeps = default_sweeps()) {
  return detail::timed("convergence order", [&](Gate& gate) {
    gate.passed = true;
    for (const auto& sweep : sweeps) {
      const auto result = experiments::run_convergence(
          experiments::bump_config(sweep.order, sweep.largest_threshold),
          sweep_thresholds(sweep.largest_threshold));
      const bool ok =
          std::abs(result.slope - static_cast<double>(sweep.order)) <= 0.5;
      gate.passed = gate.passed && ok;
      gate.detail += (gate.detail.empty() ? "" : "; ") + std::string("order ") +
                     std::to_string(sweep.order) + " slope " +
                     detail::format(result.slope) + " (errors " +
                     detail::format(result.points.front().error) + " .. " +
                     detail::format(result.points.back().error) + ")";
    }
  });
}

/// GTS over LTS total steps on the bump problem.
inline Gate step_ratio(const double low = 1.4, const double high = 1.8) {
  return detail::timed("GTS/LTS step ratio", [&](Gate& gate) {
    const auto result =
        experiments::run_speed(experiments::bump_config(5, 0x1p-12));
    gate.passed = result.step_ratio >= low && result.step_ratio <= high;
    gate.detail = "steps " + std::to_string(result.gts.total_steps) + " / " +
                  std::to_string(result.lts.total_steps) + " = " +
                  detail::format(result.step_ratio) + ", evaluations ratio " +
                  detail::format(result.evaluation_ratio);
  });
}

/// Randomized identities of the coefficient generators, each over
/// `cases` exact cases.
inline Gate property_suites(const std::size_t cases = 1000,
                            const std::uint64_t seed = 3) {
  return detail::timed("property suites", [&](Gate& gate) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> failures;

    // Partition of unity and linear reproduction.
    {
      std::uniform_int_distribution<int> count(1, 7);
      std::uniform_int_distribution<int> numer(-64, 64);
      for (std::size_t trial = 0; trial < cases; ++trial) {
        std::vector<Rational> nodes;
        const int k = count(rng);
        while (static_cast<int>(nodes.size()) < k) {
          const Rational x = make_rational(numer(rng), 8);
          if (std::find(nodes.begin(), nodes.end(), x) == nodes.end()) {
            nodes.push_back(x);
          }
        }
        const Rational t = make_rational(numer(rng), 16);
        Rational sum = 0;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          sum += lagrange_eval(t, nodes, j);
        }
        if (sum != 1) {
          failures.push_back("partition of unity");
          break;
        }
      }
    }
    // Adams-Bashforth weights sum to one.
    {
      std::uniform_int_distribution<int> order(1, 7);
      for (std::size_t trial = 0; trial < cases; ++trial) {
        const auto seq =
            verification::random_sequences(rng, 1, order(rng) + 1)[0];
        std::vector<Rational> past(seq.times.rbegin() + 1, seq.times.rend());
        const auto ab = ab_coefficients(past, seq.times.back());
        Rational sum = 0;
        for (const auto& a : ab.alpha) {
          sum += a;
        }
        if (sum != 1) {
          failures.push_back("Adams-Bashforth sum");
          break;
        }
      }
    }
    // Small-step entries sum to the union step.
    {
      std::uniform_int_distribution<std::size_t> order(1, 4);
      std::uniform_int_distribution<std::size_t> sets(1, 3);
      std::size_t checked = 0;
      while (checked < cases) {
        const std::size_t k = order(rng);
        const auto grid = merge_union(
            verification::random_sequences(rng, sets(rng), k + 3));
        for (const std::size_t n : verification::valid_small_steps(grid, k)) {
          const auto table = lts_small_step_beta<Rational>(grid, k, n);
          if (table.sum() != grid.union_time(n + 1) - grid.union_time(n)) {
            failures.push_back("small-step sum");
            checked = cases;
            break;
          }
          ++checked;
        }
      }
    }
    // Translation invariance and scale covariance.
    {
      std::uniform_int_distribution<std::size_t> order(1, 4);
      std::uniform_int_distribution<int> numerator(-20, 20);
      std::uniform_int_distribution<int> positive(1, 9);
      bool translation_ok = true;
      bool scaling_ok = true;
      for (std::size_t trial = 0; trial < cases; ++trial) {
        const std::size_t k = order(rng);
        auto seqs = verification::random_sequences(rng, 2, k + 2);
        const auto grid = merge_union(seqs);
        const std::size_t n = verification::valid_small_steps(grid, k).back();
        const auto base = lts_small_step_beta<Rational>(grid, k, n);
        const Rational shift = make_rational(numerator(rng), positive(rng));
        const Rational scale = make_rational(positive(rng), positive(rng));
        auto shifted = seqs;
        auto scaled = seqs;
        for (auto& seq : shifted) {
          for (auto& t : seq.times) {
            t += shift;
          }
        }
        for (auto& seq : scaled) {
          for (auto& t : seq.times) {
            t *= scale;
          }
        }
        translation_ok =
            translation_ok &&
            lts_small_step_beta<Rational>(merge_union(shifted), k, n).entries ==
                base.entries;
        const auto stretched =
            lts_small_step_beta<Rational>(merge_union(scaled), k, n);
        bool same = stretched.entries.size() == base.entries.size();
        for (const auto& [q, value] : base.entries) {
          same = same && stretched.at(q) == value * scale;
        }
        scaling_ok = scaling_ok && same;
      }
      if (!translation_ok) {
        failures.push_back("translation invariance");
      }
      if (!scaling_ok) {
        failures.push_back("scale covariance");
      }
    }
    gate.passed = failures.empty();
    if (failures.empty()) {
      gate.detail = "5 suites x " + std::to_string(cases) + " cases";
    } else {
      for (const auto& f : failures) {
        gate.detail += (gate.detail.empty() ? "failed: " : ", ") + f;
      }
    }
  });
}

}  // namespace lts::selftest
