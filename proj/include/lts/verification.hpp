// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "lts/coefficients.hpp"
#include "lts/rational.hpp"
#include "lts/time_grid.hpp"

/// Randomized grids and exact identity checks for the coefficient tables.
namespace lts::verification {

/// Random evaluation times for `num_sets` sets, all starting at 0, with
/// `length` evaluations each.  Steps are positive fractions with small
/// denominators so that exact arithmetic stays cheap.
template <typename Rng>
std::vector<BasicStepSequence<Rational>> random_sequences(
    Rng& rng, const std::size_t num_sets, const std::size_t length) {
  std::uniform_int_distribution<int> numerator(1, 6);
  std::uniform_int_distribution<int> denominator(1, 4);
  std::vector<BasicStepSequence<Rational>> result;
  for (std::size_t s = 0; s < num_sets; ++s) {
    BasicStepSequence<Rational> seq;
    seq.set_id = static_cast<int>(s);
    seq.times.push_back(Rational(0));
    while (seq.times.size() < length) {
      seq.times.push_back(seq.times.back() +
                          make_rational(numerator(rng), denominator(rng)));
    }
    result.push_back(std::move(seq));
  }
  return result;
}

/// Random power-of-two step patterns (sizes 1, 2 or 4 units, aligned to
/// their size), the kind produced by an adaptive LTS controller.
template <typename Rng>
std::vector<BasicStepSequence<Rational>> random_dyadic_sequences(
    Rng& rng, const std::size_t num_sets, const std::size_t length) {
  std::uniform_int_distribution<int> exponent(0, 2);
  std::vector<BasicStepSequence<Rational>> result;
  for (std::size_t s = 0; s < num_sets; ++s) {
    BasicStepSequence<Rational> seq;
    seq.set_id = static_cast<int>(s);
    long t = 0;
    seq.times.push_back(Rational(0));
    while (seq.times.size() < length) {
      long step = 1L << exponent(rng);
      while (t % step != 0) {
        step /= 2;
      }
      t += step;
      seq.times.push_back(Rational(t));
    }
    result.push_back(std::move(seq));
  }
  return result;
}

/// Union steps whose small-step table is defined at this order.
template <typename Time>
std::vector<std::size_t> valid_small_steps(const BasicUnionGrid<Time>& grid,
                                           const std::size_t order) {
  std::vector<std::size_t> steps;
  for (std::size_t n = 0; n + 1 < grid.size(); ++n) {
    bool ok = true;
    for (std::size_t s = 0; s < grid.num_sets(); ++s) {
      ok = ok && grid.m_of(s, n) + 1 >= order;
    }
    if (ok) {
      steps.push_back(n);
    }
  }
  return steps;
}

/// Full steps `m` of set position `s` whose table is defined at this order.
template <typename Time>
std::vector<std::size_t> valid_full_steps(const BasicUnionGrid<Time>& grid,
                                          const std::size_t order,
                                          const std::size_t s) {
  const auto small = valid_small_steps(grid, order);
  std::vector<std::size_t> steps;
  for (std::size_t m = 0; m + 1 < grid.set_times(s).size(); ++m) {
    const std::size_t first = *grid.n_of(s, m);
    if (!small.empty() && first >= small.front()) {
      steps.push_back(m);
    }
  }
  return steps;
}

/// Marginalizing the full-step table over all other sets must reproduce
/// the plain Adams-Bashforth coefficients on the set's own times.
template <typename Time>
bool volume_identity_holds(const BasicUnionGrid<Time>& grid,
                           const std::size_t order, const std::size_t s,
                           const std::size_t m) {
  const auto table =
      accumulate_full_step<Rational>(grid, order, grid.set_id(s), m);
  const auto marginal = marginalize_volume(table, s);
  std::vector<Rational> own;
  for (std::size_t j = 0; j < order; ++j) {
    own.push_back(time_as<Rational>(grid.set_times(s)[m - j]));
  }
  const auto ab = ab_coefficients(
      own, time_as<Rational>(grid.set_times(s)[m + 1]));
  return marginal.alpha == ab.alpha;
}

/// The small-step table applied to products of monomials in each set's
/// time must equal the union Adams-Bashforth sum of the same monomials,
/// for every per-set degree below the order.
template <typename Time>
bool consistency_holds(const BasicUnionGrid<Time>& grid,
                       const std::size_t order, const std::size_t n) {
  const auto table = lts_small_step_beta<Rational>(grid, order, n);
  std::vector<Rational> past;
  for (std::size_t i = 0; i < order; ++i) {
    past.push_back(time_as<Rational>(grid.union_time(n - i)));
  }
  const Rational next = time_as<Rational>(grid.union_time(n + 1));
  const auto ab = ab_coefficients(past, next);
  const std::size_t num_sets = grid.num_sets();

  std::size_t combos = 1;
  for (std::size_t s = 0; s < num_sets; ++s) {
    combos *= order;
  }
  std::vector<std::size_t> degree(num_sets);
  for (std::size_t flat = 0; flat < combos; ++flat) {
    std::size_t rest = flat;
    std::size_t total_degree = 0;
    for (std::size_t s = 0; s < num_sets; ++s) {
      degree[s] = rest % order;
      rest /= order;
      total_degree += degree[s];
    }
    Rational lhs = 0;
    for (const auto& [q, value] : table.entries) {
      Rational term = value;
      for (std::size_t s = 0; s < num_sets; ++s) {
        const Rational dt =
            time_as<Rational>(grid.set_times(s)[q[s]]) - past[0];
        for (std::size_t p = 0; p < degree[s]; ++p) {
          term *= dt;
        }
      }
      lhs += term;
    }
    Rational rhs = 0;
    for (std::size_t i = 0; i < order; ++i) {
      Rational term = ab.alpha[i];
      for (std::size_t p = 0; p < total_degree; ++p) {
        term *= past[i] - past[0];
      }
      rhs += term;
    }
    rhs *= ab.step;
    if (lhs != rhs) {
      return false;
    }
  }
  return true;
}

}  // namespace lts::verification
