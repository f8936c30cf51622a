// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "lts/coefficients.hpp"
#include "lts/rational.hpp"
#include "lts/time_grid.hpp"

/// Published coefficient tables for 2:1 stepping on two sets A and B, with
/// the step patterns that produce them.  Times are in units of the small
/// step (dt^B = 1, dt^A = 2).
namespace lts::reference {

enum class Pattern {
  /// Steady 2:1 stepping.
  Steady,
  /// GTS at step 2 up to t = 0, then B halves its step.
  LtsByDecrease,
  /// GTS at step 1 up to t = 0, then A doubles its step.
  LtsByIncrease,
  /// 2:1 up to t = 0, then A halves its step.
  GtsByDecrease,
  /// 2:1 up to t = 0, then B doubles its step.
  GtsByIncrease,
};

/// Evaluation times of sets A and B for a pattern, running from far enough
/// back to support order `order` at t = 0 through t = `end`.
inline std::vector<BasicStepSequence<Rational>> pattern_sequences(
    const Pattern pattern, const int order, const int end = 12) {
  const int start = -2 * (order + 2);
  std::vector<Rational> a;
  std::vector<Rational> b;
  const auto fill = [](std::vector<Rational>& out, const int from,
                       const int to, const int step) {
    for (int t = from; t <= to; t += step) {
      if (out.empty() || out.back() < t) {
        out.emplace_back(t);
      }
    }
  };
  switch (pattern) {
    case Pattern::Steady:
      fill(a, start, end, 2);
      fill(b, start, end, 1);
      break;
    case Pattern::LtsByDecrease:
      fill(a, start, end, 2);
      fill(b, start, 0, 2);
      fill(b, 0, end, 1);
      break;
    case Pattern::LtsByIncrease:
      fill(a, start, 0, 1);
      fill(a, 0, end, 2);
      fill(b, start, end, 1);
      break;
    case Pattern::GtsByDecrease:
      fill(a, start, 0, 2);
      fill(a, 0, end, 1);
      fill(b, start, end, 1);
      break;
    case Pattern::GtsByIncrease:
      fill(a, start, end, 2);
      fill(b, start, 0, 1);
      fill(b, 0, end, 2);
      break;
  }
  return {{0, std::move(a)}, {1, std::move(b)}};
}

/// One published full-step table: rows are A evaluation times, columns are
/// B evaluation times, cells are exact fractions.
struct Table {
  std::string label;
  int order;
  Pattern pattern;
  /// Sets whose full step (starting at `step_start`) uses this table.
  std::vector<int> sets;
  int step_start;
  std::vector<int> rows;
  std::vector<int> cols;
  std::vector<std::vector<std::string>> cells;
};

inline const std::vector<Table>& tables() {
  using P = Pattern;
  static const std::vector<Table> all{
      // ---- order 2 ----
      {"order 2 (a)", 2, P::Steady, {0}, 0, {0, -2}, {1, 0, -1},
       {{"9/8", "1/2", "-1/8"}, {"-3/8", "0", "-1/8"}}},
      {"order 2 (b)", 2, P::Steady, {1}, 0, {0, -2}, {0, -1},
       {{"3/2", "-1/4"}, {"0", "-1/4"}}},
      {"order 2 (c)", 2, P::Steady, {1}, 1, {0, -2}, {1, 0},
       {{"9/4", "-1/2"}, {"-3/4", "0"}}},
      {"order 2 (d0)", 2, P::LtsByDecrease, {0}, 0, {0, -2}, {1, 0, -2},
       {{"9/8", "3/8", "0"}, {"-3/8", "0", "-1/8"}}},
      {"order 2 (e0)", 2, P::LtsByDecrease, {1}, 0, {0, -2}, {0, -2},
       {{"5/4", "0"}, {"0", "-1/4"}}},
      {"order 2 (f0)", 2, P::LtsByDecrease, {1}, 1, {0, -2}, {1, 0},
       {{"9/4", "-1/2"}, {"-3/4", "0"}}},
      {"order 2 (g0)", 2, P::LtsByIncrease, {0}, 0, {0, -1}, {1, 0, -1},
       {{"3/2", "1/2", "0"}, {"-3/4", "0", "-1/4"}}},
      {"order 2 (h0)", 2, P::LtsByIncrease, {1}, 0, {0, -1}, {0, -1},
       {{"3/2", "0"}, {"0", "-1/2"}}},
      {"order 2 (i0)", 2, P::LtsByIncrease, {1}, 1, {0, -1}, {1, 0},
       {{"3", "-1/2"}, {"-3/2", "0"}}},
      {"order 2 (j0)", 2, P::GtsByDecrease, {0, 1}, 0, {0, -2}, {0, -1},
       {{"3/2", "-1/4"}, {"0", "-1/4"}}},
      {"order 2 (k0)", 2, P::GtsByIncrease, {0, 1}, 0, {0, -2}, {0, -1},
       {{"2", "-1/2"}, {"0", "-1/2"}}},

      // ---- order 3 (a)-(c) also appear as the 2:1 example table, (d0)-(f0)
      // as the transition-from-GTS example table ----
      {"order 3 (a)", 3, P::Steady, {0}, 0, {0, -2, -4}, {1, 0, -1, -2},
       {{"115/64", "7/24", "-11/64", "0"},
        {"-115/96", "0", "-11/32", "5/24"},
        {"23/64", "0", "11/192", "0"}}},
      {"order 3 (b)", 3, P::Steady, {1}, 0, {0, -2, -4}, {0, -1, -2},
       {{"23/12", "-1/2", "0"}, {"0", "-1", "5/12"}, {"0", "1/6", "0"}}},
      {"order 3 (c)", 3, P::Steady, {1}, 1, {0, -2, -4}, {1, 0, -1},
       {{"115/32", "-4/3", "5/32"},
        {"-115/48", "0", "5/16"},
        {"23/32", "0", "-5/96"}}},
      {"order 3 (d0)", 3, P::LtsByDecrease, {0}, 0, {0, -2, -4},
       {1, 0, -2, -4},
       {{"5/3", "1/4", "0", "0"},
        {"-10/9", "0", "-2/9", "0"},
        {"1/3", "0", "0", "1/12"}}},
      {"order 3 (e0)", 3, P::LtsByDecrease, {1}, 0, {0, -2, -4}, {0, -2, -4},
       {{"17/12", "0", "0"}, {"0", "-7/12", "0"}, {"0", "0", "1/6"}}},
      {"order 3 (f0)", 3, P::LtsByDecrease, {1}, 1, {0, -2, -4}, {1, 0, -2},
       {{"10/3", "-11/12", "0"},
        {"-20/9", "0", "5/36"},
        {"2/3", "0", "0"}}},
      {"order 3 (g0)", 3, P::LtsByIncrease, {0}, 0, {0, -1, -2},
       {1, 0, -1, -2},
       {{"23/8", "7/24", "0", "0"},
        {"-23/8", "0", "-11/24", "0"},
        {"23/24", "0", "0", "5/24"}}},
      {"order 3 (h0)", 3, P::LtsByIncrease, {1}, 0, {0, -1, -2}, {0, -1, -2},
       {{"23/12", "0", "0"}, {"0", "-4/3", "0"}, {"0", "0", "5/12"}}},
      {"order 3 (i0)", 3, P::LtsByIncrease, {1}, 1, {0, -1, -2}, {1, 0, -1},
       {{"23/4", "-4/3", "0"},
        {"-23/4", "0", "5/12"},
        {"23/12", "0", "0"}}},
      {"order 3 (g1)", 3, P::LtsByIncrease, {0}, 2, {2, 0, -1}, {3, 2, 1, 0},
       {{"23/12", "7/24", "-11/72", "0"},
        {"-23/12", "0", "-11/24", "5/24"},
        {"23/24", "0", "11/72", "0"}}},
      {"order 3 (h1)", 3, P::LtsByIncrease, {1}, 2, {2, 0, -1}, {2, 1, 0},
       {{"23/12", "-4/9", "0"}, {"0", "-4/3", "5/12"}, {"0", "4/9", "0"}}},
      {"order 3 (i1)", 3, P::LtsByIncrease, {1}, 3, {2, 0, -1}, {3, 2, 1},
       {{"23/6", "-4/3", "5/36"},
        {"-23/6", "0", "5/12"},
        {"23/12", "0", "-5/36"}}},
      {"order 3 (j0)", 3, P::GtsByDecrease, {0, 1}, 0, {0, -2, -4},
       {0, -1, -2},
       {{"23/12", "-1/2", "0"}, {"0", "-1", "5/12"}, {"0", "1/6", "0"}}},
      {"order 3 (j1)", 3, P::GtsByDecrease, {0, 1}, 1, {1, 0, -2},
       {1, 0, -1},
       {{"23/12", "0", "-5/36"}, {"0", "-4/3", "5/12"}, {"0", "0", "5/36"}}},
      {"order 3 (k0)", 3, P::GtsByIncrease, {0, 1}, 0, {0, -2, -4},
       {0, -1, -2},
       {{"19/6", "-5/4", "0"}, {"0", "-5/2", "7/6"}, {"0", "5/12", "0"}}},
      {"order 3 (k1)", 3, P::GtsByIncrease, {0, 1}, 2, {2, 0, -2},
       {2, 0, -1},
       {{"37/18", "0", "-5/36"}, {"0", "-13/6", "5/6"}, {"0", "0", "5/12"}}},

      // ---- order 4 ----
      {"order 4 (a)", 4, P::Steady, {0}, 0, {0, -2, -4, -6},
       {1, 0, -1, -2, -3},
       {{"1925/768", "-1/12", "-55/384", "0", "3/256"},
        {"-1925/768", "0", "-55/128", "7/12", "-27/256"},
        {"385/256", "0", "55/384", "0", "-27/256"},
        {"-275/768", "0", "-11/384", "0", "3/256"}}},
      {"order 4 (b)", 4, P::Steady, {1}, 0, {0, -2, -4, -6}, {0, -1, -2, -3},
       {{"55/24", "-295/384", "0", "3/128"},
        {"0", "-295/128", "37/24", "-27/128"},
        {"0", "295/384", "0", "-27/128"},
        {"0", "-59/384", "0", "3/128"}}},
      {"order 4 (c)", 4, P::Steady, {1}, 1, {0, -2, -4, -6}, {1, 0, -1, -2},
       {{"1925/384", "-59/24", "185/384", "0"},
        {"-1925/384", "0", "185/128", "-3/8"},
        {"385/128", "0", "-185/384", "0"},
        {"-275/384", "0", "37/384", "0"}}},
      {"order 4 (d0)", 4, P::LtsByDecrease, {0}, 0, {0, -2, -4, -6},
       {1, 0, -2, -4, -6},
       {{"833/384", "47/384", "0", "0", "0"},
        {"-833/384", "0", "-37/128", "0", "0"},
        {"833/640", "0", "0", "461/1920", "0"},
        {"-119/384", "0", "0", "0", "-25/384"}}},
      {"order 4 (e0)", 4, P::LtsByDecrease, {1}, 0, {0, -2, -4, -6},
       {0, -2, -4, -6},
       {{"99/64", "0", "0", "0"},
        {"0", "-187/192", "0", "0"},
        {"0", "0", "107/192", "0"},
        {"0", "0", "0", "-25/192"}}},
      {"order 4 (f0)", 4, P::LtsByDecrease, {1}, 1, {0, -2, -4, -6},
       {1, 0, -2, -4},
       {{"833/192", "-125/96", "0", "0"},
        {"-833/192", "0", "19/48", "0"},
        {"833/320", "0", "0", "-37/480"},
        {"-119/192", "0", "0", "0"}}},
      {"order 4 (d1)", 4, P::LtsByDecrease, {0}, 2, {2, 0, -2, -4},
       {3, 2, 1, 0, -2},
       {{"1925/768", "-25/192", "-65/768", "0", "0"},
        {"-1925/768", "0", "-65/256", "29/96", "0"},
        {"385/256", "0", "65/768", "0", "-3/64"},
        {"-275/768", "0", "-13/768", "0", "0"}}},
      {"order 4 (e1)", 4, P::LtsByDecrease, {1}, 2, {2, 0, -2, -4},
       {2, 1, 0, -2},
       {{"211/96", "-125/192", "0", "0"},
        {"0", "-125/64", "47/48", "0"},
        {"0", "125/192", "0", "-3/32"},
        {"0", "-25/192", "0", "0"}}},
      {"order 4 (f1)", 4, P::LtsByDecrease, {1}, 3, {2, 0, -2, -4},
       {3, 2, 1, 0},
       {{"1925/384", "-59/24", "185/384", "0"},
        {"-1925/384", "0", "185/128", "-3/8"},
        {"385/128", "0", "-185/384", "0"},
        {"-275/384", "0", "37/384", "0"}}},
      {"order 4 (g0)", 4, P::LtsByIncrease, {0}, 0, {0, -1, -2, -3},
       {1, 0, -1, -2, -3},
       {{"55/12", "-1/12", "0", "0", "0"},
        {"-55/8", "0", "-11/24", "0", "0"},
        {"55/12", "0", "0", "7/12", "0"},
        {"-55/48", "0", "0", "0", "-3/16"}}},
      {"order 4 (h0)", 4, P::LtsByIncrease, {1}, 0, {0, -1, -2, -3},
       {0, -1, -2, -3},
       {{"55/24", "0", "0", "0"},
        {"0", "-59/24", "0", "0"},
        {"0", "0", "37/24", "0"},
        {"0", "0", "0", "-3/8"}}},
      {"order 4 (i0)", 4, P::LtsByIncrease, {1}, 1, {0, -1, -2, -3},
       {1, 0, -1, -2},
       {{"55/6", "-59/24", "0", "0"},
        {"-55/4", "0", "37/24", "0"},
        {"55/6", "0", "0", "-3/8"},
        {"-55/24", "0", "0", "0"}}},
      {"order 4 (g1)", 4, P::LtsByIncrease, {0}, 2, {2, 0, -1, -2},
       {3, 2, 1, 0, -1},
       {{"275/96", "-1/12", "-11/96", "0", "0"},
        {"-275/48", "0", "-11/16", "7/12", "0"},
        {"275/48", "0", "11/24", "0", "-3/16"},
        {"-55/32", "0", "-11/96", "0", "0"}}},
      {"order 4 (h1)", 4, P::LtsByIncrease, {1}, 2, {2, 0, -1, -2},
       {2, 1, 0, -1},
       {{"55/24", "-59/96", "0", "0"},
        {"0", "-59/16", "37/24", "0"},
        {"0", "59/24", "0", "-3/8"},
        {"0", "-59/96", "0", "0"}}},
      {"order 4 (i1)", 4, P::LtsByIncrease, {1}, 3, {2, 0, -1, -2},
       {3, 2, 1, 0},
       {{"275/48", "-59/24", "37/96", "0"},
        {"-275/24", "0", "37/16", "-3/8"},
        {"275/24", "0", "-37/24", "0"},
        {"-55/16", "0", "37/96", "0"}}},
      {"order 4 (g2)", 4, P::LtsByIncrease, {0}, 4, {4, 2, 0, -1},
       {5, 4, 3, 2, 1},
       {{"165/64", "-1/12", "-11/80", "0", "3/320"},
        {"-275/96", "0", "-11/24", "7/12", "-3/32"},
        {"165/64", "0", "11/48", "0", "-9/64"},
        {"-55/48", "0", "-11/120", "0", "3/80"}}},
      {"order 4 (h2)", 4, P::LtsByIncrease, {1}, 4, {4, 2, 0, -1},
       {4, 3, 2, 1},
       {{"55/24", "-59/80", "0", "3/160"},
        {"0", "-59/24", "37/24", "-3/16"},
        {"0", "59/48", "0", "-9/32"},
        {"0", "-59/120", "0", "3/40"}}},
      {"order 4 (i2)", 4, P::LtsByIncrease, {1}, 5, {4, 2, 0, -1},
       {5, 4, 3, 2},
       {{"165/32", "-59/24", "37/80", "0"},
        {"-275/48", "0", "37/24", "-3/8"},
        {"165/32", "0", "-37/48", "0"},
        {"-55/24", "0", "37/120", "0"}}},
      {"order 4 (j0)", 4, P::GtsByDecrease, {0, 1}, 0, {0, -2, -4, -6},
       {0, -1, -2, -3},
       {{"55/24", "-295/384", "0", "3/128"},
        {"0", "-295/128", "37/24", "-27/128"},
        {"0", "295/384", "0", "-27/128"},
        {"0", "-59/384", "0", "3/128"}}},
      {"order 4 (j1)", 4, P::GtsByDecrease, {0, 1}, 1, {1, 0, -2, -4},
       {1, 0, -1, -2},
       {{"55/24", "0", "-37/120", "0"},
        {"0", "-59/24", "37/32", "0"},
        {"0", "0", "37/48", "-3/8"},
        {"0", "0", "-37/480", "0"}}},
      {"order 4 (j2)", 4, P::GtsByDecrease, {0, 1}, 2, {2, 1, 0, -2},
       {2, 1, 0, -1},
       {{"55/24", "0", "0", "-3/32"},
        {"0", "-59/24", "0", "3/8"},
        {"0", "0", "37/24", "-9/16"},
        {"0", "0", "0", "-3/32"}}},
      {"order 4 (k0)", 4, P::GtsByIncrease, {0, 1}, 0, {0, -2, -4, -6},
       {0, -1, -2, -3},
       {{"9/2", "-55/24", "0", "1/12"},
        {"0", "-55/8", "31/6", "-3/4"},
        {"0", "55/24", "0", "-3/4"},
        {"0", "-11/24", "0", "1/12"}}},
      {"order 4 (k1)", 4, P::GtsByIncrease, {0, 1}, 2, {2, 0, -2, -4},
       {2, 0, -1, -2},
       {{"8/3", "0", "-3/8", "0"},
        {"0", "-35/6", "27/8", "0"},
        {"0", "0", "27/8", "-11/6"},
        {"0", "0", "-3/8", "0"}}},
      {"order 4 (k2)", 4, P::GtsByIncrease, {0, 1}, 4, {4, 2, 0, -2},
       {4, 2, 0, -1},
       {{"71/30", "0", "0", "-3/40"},
        {"0", "-17/6", "0", "3/8"},
        {"0", "0", "8/3", "-9/8"},
        {"0", "0", "0", "-3/8"}}},
  };
  return all;
}

/// Outcome of comparing one generated table against a published one.
struct Comparison {
  bool matches = true;
  std::vector<std::string> mismatches;
};

/// Generates the full-step table for `set` (0 = A, 1 = B) described by
/// `table` in exact arithmetic and compares every cell.  Entries outside
/// the published rows and columns must vanish.
inline Comparison compare(const Table& table, const int set) {
  const auto sequences = pattern_sequences(table.pattern, table.order);
  const auto grid = merge_union(sequences);
  const auto& own_times = grid.set_times(static_cast<std::size_t>(set));
  std::size_t m = 0;
  while (m < own_times.size() && own_times[m] != table.step_start) {
    ++m;
  }
  Comparison result;
  const auto fail = [&result](std::string message) {
    result.matches = false;
    result.mismatches.push_back(std::move(message));
  };
  if (m == own_times.size()) {
    fail("no step starting at " + std::to_string(table.step_start));
    return result;
  }
  const auto generated = accumulate_full_step<Rational>(
      grid, static_cast<std::size_t>(table.order), set, m);

  const auto index_of = [&grid](const std::size_t s, const int t) {
    const auto& times = grid.set_times(s);
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] == t) {
        return i;
      }
    }
    return times.size();
  };
  std::vector<std::vector<std::size_t>> covered;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.cols.size(); ++c) {
      const std::vector<std::size_t> q{index_of(0, table.rows[r]),
                                       index_of(1, table.cols[c])};
      covered.push_back(q);
      const Rational expected = parse_rational(table.cells[r][c]);
      const Rational actual = generated.at(q);
      if (actual != expected) {
        fail("(" + std::to_string(table.rows[r]) + ", " +
             std::to_string(table.cols[c]) + "): expected " +
             to_string(expected) + ", got " + to_string(actual));
      }
    }
  }
  for (const auto& [q, value] : generated.entries) {
    if (std::find(covered.begin(), covered.end(), q) == covered.end()) {
      fail("unexpected entry at A-time " + to_string(grid.set_times(0)[q[0]]) +
           ", B-time " + to_string(grid.set_times(1)[q[1]]) + ": " +
           to_string(value));
    }
  }
  return result;
}

}  // namespace lts::reference
