// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lts/coefficients.hpp"
#include "lts/reference_tables.hpp"
#include "lts/verification.hpp"

using lts::BetaTable;
using lts::ErrorKind;
using lts::make_rational;
using lts::Rational;
using Seq = lts::BasicStepSequence<Rational>;

namespace {
template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const lts::Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

std::vector<Rational> range(const int from, const int to, const int step) {
  std::vector<Rational> out;
  for (int t = from; t <= to; t += step) {
    out.emplace_back(t);
  }
  return out;
}

// Steady 2:1 stepping, A every 2, B every 1, from t = -8.
lts::BasicUnionGrid<Rational> steady_grid() {
  return lts::merge_union(
      std::vector<Seq>{{0, range(-8, 8, 2)}, {1, range(-8, 8, 1)}});
}

std::size_t union_index(const lts::BasicUnionGrid<Rational>& grid,
                        const int t) {
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (grid.union_time(n) == t) {
      return n;
    }
  }
  FAIL("time not in grid");
  return 0;
}

std::size_t set_index_at(const lts::BasicUnionGrid<Rational>& grid,
                         const std::size_t s, const int t) {
  const auto& times = grid.set_times(s);
  for (std::size_t m = 0; m < times.size(); ++m) {
    if (times[m] == t) {
      return m;
    }
  }
  FAIL("time not in set");
  return 0;
}

// Entry of a table keyed by (A time, B time).
Rational entry(const lts::BasicUnionGrid<Rational>& grid,
               const BetaTable<Rational>& table, const int ta, const int tb) {
  return table.at({set_index_at(grid, 0, ta), set_index_at(grid, 1, tb)});
}

template <typename Rng>
lts::BasicUnionGrid<Rational> random_two_set_grid(Rng& rng,
                                                  const std::size_t order) {
  return lts::merge_union(
      lts::verification::random_dyadic_sequences(rng, 2, 3 * order + 4));
}
}  // namespace

TEST_CASE("Adams-Bashforth coefficients", "[coefficients]") {
  CHECK(lts::ab_coefficients(std::vector<Rational>{0}, Rational(1)).alpha ==
        std::vector<Rational>{1});
  CHECK(lts::ab_coefficients(std::vector<Rational>{0, -1}, Rational(1))
            .alpha == std::vector<Rational>{make_rational(3, 2),
                                            make_rational(-1, 2)});
  const auto ab3 =
      lts::ab_coefficients(std::vector<Rational>{0, -1, -2}, Rational(1));
  CHECK(ab3.alpha == std::vector<Rational>{make_rational(23, 12),
                                           make_rational(-4, 3),
                                           make_rational(5, 12)});
  CHECK(ab3.step == 1);
  CHECK(lts::lagrange_eval(Rational(1), std::vector<Rational>{0, -1, -2}, 0) ==
        3);
  CHECK(lts::lagrange_integral(Rational(2), Rational(2),
                               std::vector<Rational>{0, -1}, 1) == 0);

  CHECK(error_kind([] {
          lts::ab_coefficients(std::vector<Rational>{0, 1}, Rational(2));
        }) == ErrorKind::NonMonotonicTimes);
  CHECK(error_kind([] {
          lts::ab_coefficients(std::vector<Rational>{0, -1}, Rational(0));
        }) == ErrorKind::NonMonotonicTimes);
}

TEST_CASE("Second-order 2:1 worked example", "[coefficients]") {
  const auto grid = steady_grid();
  const std::size_t n0 = union_index(grid, 0);

  // First small step (B from 0 to 1): 3/2 D(0, 0), -1/4 D(-2, -1),
  // -1/4 D(0, -1) after combining with the pair's interpolation.
  const auto b = lts::lts_small_step_beta<Rational>(grid, 2, n0);
  CHECK(b.entries.size() == 3);
  CHECK(entry(grid, b, 0, 0) == make_rational(3, 2));
  CHECK(entry(grid, b, 0, -1) == make_rational(-1, 4));
  CHECK(entry(grid, b, -2, -1) == make_rational(-1, 4));
  CHECK(b.sum() == b.step);

  // Second small step (1 to 2): 9/4 D(0, 1), -3/4 D(-2, 1), -1/2 D(0, 0).
  const auto c = lts::lts_small_step_beta<Rational>(grid, 2, n0 + 1);
  CHECK(c.entries.size() == 3);
  CHECK(entry(grid, c, 0, 1) == make_rational(9, 4));
  CHECK(entry(grid, c, -2, 1) == make_rational(-3, 4));
  CHECK(entry(grid, c, 0, 0) == make_rational(-1, 2));

  // Large step of A is the sum of both, normalized by its step of 2.
  const auto a = lts::accumulate_full_step<Rational>(
      grid, 2, 0, set_index_at(grid, 0, 0));
  CHECK(a.entries.size() == 5);
  CHECK(entry(grid, a, 0, 1) == make_rational(9, 8));
  CHECK(entry(grid, a, 0, 0) == make_rational(1, 2));
  CHECK(entry(grid, a, 0, -1) == make_rational(-1, 8));
  CHECK(entry(grid, a, -2, 1) == make_rational(-3, 8));
  CHECK(entry(grid, a, -2, -1) == make_rational(-1, 8));
  for (const auto& [q, value] : b.entries) {
    CHECK(a.at(q) * 2 == value + c.at(q));
  }
}

TEST_CASE("Third-order 2:1 tables", "[coefficients]") {
  const auto grid = steady_grid();
  const auto a = lts::accumulate_full_step<Rational>(
      grid, 3, 0, set_index_at(grid, 0, 0));
  CHECK(entry(grid, a, 0, 1) == make_rational(115, 64));

  // Row sums of the A table and column sums of the B table give AB3.
  const auto volume_a = lts::marginalize_volume(a, 0);
  const std::vector<Rational> ab3{make_rational(23, 12), make_rational(-4, 3),
                                  make_rational(5, 12)};
  CHECK(volume_a.alpha == ab3);
  const auto b = lts::accumulate_full_step<Rational>(
      grid, 3, 1, set_index_at(grid, 1, 0));
  CHECK(lts::marginalize_volume(b, 1).alpha == ab3);

  CHECK(error_kind([&] { lts::marginalize_volume(a, 1); }) ==
        ErrorKind::WrongKind);
  const auto small = lts::lts_small_step_beta<Rational>(grid, 3, 8);
  CHECK(error_kind([&] { lts::marginalize_volume(small, 0); }) ==
        ErrorKind::WrongKind);
}

TEST_CASE("Transition term in the second small step", "[coefficients]") {
  const auto grid = lts::merge_union(lts::reference::pattern_sequences(
      lts::reference::Pattern::LtsByDecrease, 3));
  const std::size_t n = union_index(grid, 1);
  // The A-step table entry 2/3 at (A = -4, B = 1) only arises from the
  // second small step, so the small-step value is 2/3 times dt^A.
  const auto full = lts::accumulate_full_step<Rational>(
      grid, 3, 0, set_index_at(grid, 0, 0));
  const auto f0 = lts::accumulate_full_step<Rational>(
      grid, 3, 1, set_index_at(grid, 1, 1));
  CHECK(entry(grid, f0, -4, 1) == make_rational(2, 3));
  const auto pair = lts::two_set_beta<Rational>(grid, 3, n);
  CHECK(entry(grid, pair, -4, 1) == make_rational(2, 3));
  CHECK(entry(grid, full, -4, 1) == make_rational(1, 3));
}

TEST_CASE("Identical grids degenerate to GTS", "[coefficients]") {
  const auto grid = lts::merge_union(
      std::vector<Seq>{{0, range(0, 10, 1)}, {1, range(0, 10, 1)}});
  const auto ab4 = lts::ab_coefficients(
      std::vector<Rational>{6, 5, 4, 3}, Rational(7));
  const auto small = lts::lts_small_step_beta<Rational>(grid, 4, 6);
  const auto pair = lts::two_set_beta<Rational>(grid, 4, 6);
  CHECK(small.entries == pair.entries);
  REQUIRE(small.entries.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(small.at({6 - i, 6 - i}) == ab4.alpha[i]);
  }
  const auto full = lts::accumulate_full_step<Rational>(grid, 4, 1, 6);
  CHECK(full.entries == small.entries);
}

TEST_CASE("Coefficient errors", "[coefficients]") {
  const auto grid = steady_grid();
  CHECK(error_kind([&] { lts::lts_small_step_beta<Rational>(grid, 3, 1); }) ==
        ErrorKind::InsufficientHistory);
  CHECK(error_kind([&] {
          lts::lts_small_step_beta<Rational>(grid, 2, grid.size() - 1);
        }) == ErrorKind::UndefinedStep);
  CHECK(error_kind([&] {
          lts::accumulate_full_step<Rational>(
              grid, 2, 0, grid.set_times(0).size() - 1);
        }) == ErrorKind::UndefinedStep);
  CHECK(error_kind([&] { lts::accumulate_full_step<Rational>(grid, 2, 5, 3); })
        == ErrorKind::UnknownSet);
  CHECK(error_kind([&] { lts::two_set_beta<Rational>(grid, 5, 2); }) ==
        ErrorKind::InsufficientHistory);
  const auto three = lts::merge_union(std::vector<Seq>{
      {0, range(0, 8, 2)}, {1, range(0, 8, 1)}, {2, range(0, 8, 4)}});
  CHECK(error_kind([&] { lts::two_set_beta<Rational>(three, 2, 4); }) ==
        ErrorKind::WrongSetCount);
  CHECK(error_kind([] {
          lts::small_step_kernel(
              std::span<const Rational>(std::vector<Rational>{0, -1}),
              Rational(1),
              std::vector<std::vector<Rational>>{{0, 0}});
        }) == ErrorKind::DuplicateNodes);
}

TEST_CASE("Adams-Bashforth sums to one", "[coefficients][property]") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> order(1, 7);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto seq =
        lts::verification::random_sequences(rng, 1, order(rng) + 1)[0];
    std::vector<Rational> past(seq.times.rbegin() + 1, seq.times.rend());
    const auto ab = lts::ab_coefficients(past, seq.times.back());
    Rational sum = 0;
    for (const auto& a : ab.alpha) {
      sum += a;
    }
    REQUIRE(sum == 1);
  }
}

TEST_CASE("Small-step tables sum to the step", "[coefficients][property]") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> order(1, 4);
  std::uniform_int_distribution<std::size_t> sets(1, 3);
  int checked = 0;
  while (checked < 1000) {
    const std::size_t k = order(rng);
    const auto grid = lts::merge_union(
        lts::verification::random_sequences(rng, sets(rng), k + 3));
    for (const std::size_t n : lts::verification::valid_small_steps(grid, k)) {
      const auto table = lts::lts_small_step_beta<Rational>(grid, k, n);
      REQUIRE(table.sum() == grid.union_time(n + 1) - grid.union_time(n));
      for (const auto& [q, value] : table.entries) {
        for (std::size_t s = 0; s < grid.num_sets(); ++s) {
          REQUIRE(q[s] <= grid.m_of(s, n));
          REQUIRE(q[s] + k > grid.m_of(s, n));
        }
      }
      ++checked;
    }
  }
}

TEST_CASE("Tables are translation invariant and scale covariant",
          "[coefficients][property]") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> order(1, 4);
  std::uniform_int_distribution<int> numerator(-20, 20);
  std::uniform_int_distribution<int> positive(1, 9);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = order(rng);
    auto seqs = lts::verification::random_sequences(rng, 2, k + 2);
    const auto grid = lts::merge_union(seqs);
    const auto steps = lts::verification::valid_small_steps(grid, k);
    REQUIRE_FALSE(steps.empty());
    const std::size_t n = steps.back();
    const auto base = lts::lts_small_step_beta<Rational>(grid, k, n);

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
    const auto moved = lts::lts_small_step_beta<Rational>(
        lts::merge_union(shifted), k, n);
    REQUIRE(moved.entries == base.entries);
    const auto stretched = lts::lts_small_step_beta<Rational>(
        lts::merge_union(scaled), k, n);
    REQUIRE(stretched.entries.size() == base.entries.size());
    for (const auto& [q, value] : base.entries) {
      REQUIRE(stretched.at(q) == value * scale);
    }
  }
}

TEST_CASE("Two-set collapse matches the general formula",
          "[coefficients][property]") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 5);
    const auto grid = random_two_set_grid(rng, k);
    const auto steps = lts::verification::valid_small_steps(grid, k);
    REQUIRE_FALSE(steps.empty());
    const std::size_t n = steps[static_cast<std::size_t>(trial) % steps.size()];
    const auto general = lts::lts_small_step_beta<Rational>(grid, k, n);
    const auto pair = lts::two_set_beta<Rational>(grid, k, n);
    REQUIRE(general.entries == pair.entries);
  }
}

TEST_CASE("Volume identity on random grids", "[coefficients][property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 5);
    const auto grid = random_two_set_grid(rng, k);
    for (std::size_t s = 0; s < 2; ++s) {
      const auto steps = lts::verification::valid_full_steps(grid, k, s);
      REQUIRE_FALSE(steps.empty());
      REQUIRE(lts::verification::volume_identity_holds(grid, k, s,
                                                       steps.front()));
    }
  }
}

TEST_CASE("Consistency monomials on random grids",
          "[coefficients][property]") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 5);
    const auto grid = random_two_set_grid(rng, k);
    const auto steps = lts::verification::valid_small_steps(grid, k);
    REQUIRE(lts::verification::consistency_holds(grid, k, steps.back()));
  }
  // Three sets with irregular (non-dyadic) steps.
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 2 + static_cast<std::size_t>(trial % 3);
    const auto grid =
        lts::merge_union(lts::verification::random_sequences(rng, 3, k + 2));
    const auto steps = lts::verification::valid_small_steps(grid, k);
    REQUIRE(lts::verification::consistency_holds(grid, k, steps.back()));
  }
}

TEST_CASE("Floating-point tables agree with exact tables",
          "[coefficients][property]") {
  for (const auto& table : lts::reference::tables()) {
    const auto grid =
        lts::merge_union(lts::reference::pattern_sequences(table.pattern,
                                                           table.order));
    const auto steps = lts::verification::valid_small_steps(grid, table.order);
    for (const std::size_t n : steps) {
      const auto exact = lts::lts_small_step_beta<Rational>(grid, table.order, n);
      const auto approx = lts::lts_small_step_beta<double>(grid, table.order, n);
      double scale = 0.0;
      for (const auto& [q, value] : exact.entries) {
        scale = std::max(scale, std::abs(lts::to_double(value)));
      }
      for (const auto& [q, value] : exact.entries) {
        REQUIRE(std::abs(approx.at(q) - lts::to_double(value)) <=
                1e-13 * scale);
      }
    }
  }
}

TEST_CASE("Windowed pair tables match full-grid tables",
          "[coefficients][property]") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 5);
    const auto grid = random_two_set_grid(rng, k);
    for (std::size_t s = 0; s < 2; ++s) {
      const std::size_t o = 1 - s;
      for (const std::size_t m :
           lts::verification::valid_full_steps(grid, k, s)) {
        const auto full = lts::accumulate_full_step<Rational>(grid, k, s, m);
        const auto& own_times = grid.set_times(s);
        const auto& other_times = grid.set_times(o);
        std::vector<Rational> own(own_times.begin() + (m + 1 - k),
                                  own_times.begin() + (m + 2));
        const std::size_t latest = grid.m_of(o, *grid.n_of(s, m));
        const std::size_t first = latest + 1 - k;
        std::vector<Rational> other;
        for (std::size_t q = first;
             q < other_times.size() && other_times[q] < own.back(); ++q) {
          other.push_back(other_times[q]);
        }
        const auto window = lts::windowed_pair_full_step(k, own, other);
        REQUIRE(window.entries.size() == full.entries.size());
        for (const auto& [q, value] : window.entries) {
          std::vector<std::size_t> key(2);
          key[s] = m + 1 - k + q[0];
          key[o] = first + q[1];
          REQUIRE(full.at(key) == value);
        }
      }
    }
  }
}
