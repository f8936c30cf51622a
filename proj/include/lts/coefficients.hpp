// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "lts/error.hpp"
#include "lts/lagrange.hpp"
#include "lts/rational.hpp"
#include "lts/time_grid.hpp"

namespace lts {

/// Coefficients of one variable-step Adams-Bashforth step:
/// `dy = step * sum_j alpha[j] * D(y_{n-j})`.
template <typename Scalar>
struct AbCoeffs {
  std::size_t order = 0;
  std::vector<Scalar> alpha;
  Scalar step{};
};

/// Adams-Bashforth coefficients for a step from `past_times[0]` to `t_next`
/// using derivatives at `past_times` (most recent first, strictly
/// decreasing).
template <typename Scalar>
AbCoeffs<Scalar> ab_coefficients(std::span<const Scalar> past_times,
                                 const Scalar& t_next) {
  if (past_times.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no past times");
  }
  for (std::size_t j = 1; j < past_times.size(); ++j) {
    if (!(past_times[j] < past_times[j - 1])) {
      throw Error(ErrorKind::NonMonotonicTimes,
                  "past times must be strictly decreasing");
    }
  }
  if (!(past_times[0] < t_next)) {
    throw Error(ErrorKind::NonMonotonicTimes,
                "step must end after the last past time");
  }
  AbCoeffs<Scalar> result;
  result.order = past_times.size();
  result.step = t_next - past_times[0];
  result.alpha.reserve(result.order);
  for (std::size_t j = 0; j < result.order; ++j) {
    result.alpha.push_back(
        lagrange_integral(past_times[0], t_next, past_times, j) /
        result.step);
  }
  return result;
}

template <typename Scalar>
AbCoeffs<Scalar> ab_coefficients(const std::vector<Scalar>& past_times,
                                 const Scalar& t_next) {
  return ab_coefficients(std::span<const Scalar>(past_times), t_next);
}

/// Coefficients of derivative evaluations at mixed-time argument tuples.
///
/// Keys are absolute per-set evaluation indices `(q^1, ..., q^S)` in grid
/// set order.  A small-step table holds the `beta` of one union step
/// (entries sum to the union step size); a full-step table holds the
/// accumulated coefficients of one step of one set, normalized by that
/// step's size.
template <typename Scalar>
struct BetaTable {
  enum class Kind { SmallStep, FullStep };

  Kind kind = Kind::SmallStep;
  std::size_t order = 0;
  std::size_t num_sets = 0;
  /// Union index for small steps; set step index for full steps.
  std::size_t index = 0;
  /// Set position (full steps only).
  std::size_t set = 0;
  /// Union step size for small steps; the set's step size for full steps.
  Scalar step{};
  std::map<std::vector<std::size_t>, Scalar> entries;

  Scalar at(const std::vector<std::size_t>& q) const {
    const auto it = entries.find(q);
    return it == entries.end() ? Scalar(0) : it->second;
  }

  Scalar sum() const {
    Scalar total(0);
    for (const auto& [q, value] : entries) {
      total += value;
    }
    return total;
  }

  void add(const std::vector<std::size_t>& q, const Scalar& value) {
    auto [it, inserted] = entries.try_emplace(q, value);
    if (!inserted) {
      it->second += value;
    }
  }

  void drop_zeros() {
    std::erase_if(entries, [](const auto& entry) {
      return entry.second == Scalar(0);
    });
  }
};

/// Dense small-step coefficients for one union step.
///
/// `union_past` holds the union times `U_n, U_{n-1}, ..., U_{n-k+1}`,
/// `union_next` is `U_{n+1}`, and `controls[s]` holds the `k` most recent
/// evaluation times of set `s` at or before `U_n`, most recent first.  The
/// result has `k^S` entries; entry `(j^1, ..., j^S)` (row-major, first set
/// most significant) multiplies the derivative evaluated at offsets `j^s`
/// back from the most recent evaluation of each set.
template <typename Scalar>
std::vector<Scalar> small_step_kernel(
    std::span<const Scalar> union_past, const Scalar& union_next,
    const std::vector<std::vector<Scalar>>& controls) {
  const std::size_t order = union_past.size();
  const std::size_t num_sets = controls.size();
  const AbCoeffs<Scalar> ab = ab_coefficients(union_past, union_next);

  // interp[s][i][j] = l_j(U_{n-i}; controls of s)
  std::vector<std::vector<std::vector<Scalar>>> interp(num_sets);
  for (std::size_t s = 0; s < num_sets; ++s) {
    if (controls[s].size() != order) {
      throw Error(ErrorKind::InsufficientHistory,
                  "set needs " + std::to_string(order) + " control times");
    }
    detail::check_distinct(std::span<const Scalar>(controls[s]));
    interp[s].assign(order, std::vector<Scalar>(order, Scalar(0)));
    for (std::size_t i = 0; i < order; ++i) {
      bool on_node = false;
      for (std::size_t j = 0; j < order; ++j) {
        if (controls[s][j] == union_past[i]) {
          interp[s][i][j] = Scalar(1);
          on_node = true;
        }
      }
      if (!on_node) {
        for (std::size_t j = 0; j < order; ++j) {
          interp[s][i][j] = lagrange_eval(
              union_past[i], std::span<const Scalar>(controls[s]), j);
        }
      }
    }
  }

  std::size_t total = 1;
  for (std::size_t s = 0; s < num_sets; ++s) {
    total *= order;
  }
  std::vector<Scalar> result(total, Scalar(0));
  std::vector<std::size_t> offsets(num_sets, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t s = num_sets; s-- > 0;) {
      offsets[s] = rest % order;
      rest /= order;
    }
    Scalar value(0);
    for (std::size_t i = 0; i < order; ++i) {
      Scalar term = ab.alpha[i];
      for (std::size_t s = 0; s < num_sets && term != Scalar(0); ++s) {
        term *= interp[s][i][offsets[s]];
      }
      value += term;
    }
    result[flat] = ab.step * value;
  }
  return result;
}

namespace detail {
template <typename Scalar, typename Time>
std::vector<Scalar> union_past_times(const BasicUnionGrid<Time>& grid,
                                     const std::size_t n,
                                     const std::size_t order) {
  std::vector<Scalar> past;
  past.reserve(order);
  for (std::size_t i = 0; i < order; ++i) {
    past.push_back(time_as<Scalar>(grid.union_time(n - i)));
  }
  return past;
}

template <typename Time>
void check_small_step(const BasicUnionGrid<Time>& grid, const std::size_t order,
                      const std::size_t n) {
  if (order == 0) {
    throw Error(ErrorKind::InvalidArgument, "order must be positive");
  }
  if (n + 1 >= grid.size()) {
    throw Error(ErrorKind::UndefinedStep,
                "union step " + std::to_string(n) + " has no end time");
  }
  for (std::size_t s = 0; s < grid.num_sets(); ++s) {
    if (grid.m_of(s, n) + 1 < order) {
      throw Error(ErrorKind::InsufficientHistory,
                  "set " + std::to_string(grid.set_id(s)) + " has only " +
                      std::to_string(grid.m_of(s, n) + 1) +
                      " evaluations before union step " + std::to_string(n));
    }
  }
}
}  // namespace detail

/// The small-step table for union step `n` of a grid, summing over all
/// interpolation points of every set.
template <typename Scalar, typename Time>
BetaTable<Scalar> lts_small_step_beta(const BasicUnionGrid<Time>& grid,
                                      const std::size_t order,
                                      const std::size_t n) {
  detail::check_small_step(grid, order, n);
  const std::size_t num_sets = grid.num_sets();
  std::vector<std::vector<Scalar>> controls(num_sets);
  for (std::size_t s = 0; s < num_sets; ++s) {
    const std::size_t m = grid.m_of(s, n);
    for (std::size_t j = 0; j < order; ++j) {
      controls[s].push_back(time_as<Scalar>(grid.set_times(s)[m - j]));
    }
  }
  const std::vector<Scalar> past =
      detail::union_past_times<Scalar>(grid, n, order);
  const Scalar next = time_as<Scalar>(grid.union_time(n + 1));
  const std::vector<Scalar> dense =
      small_step_kernel(std::span<const Scalar>(past), next, controls);

  BetaTable<Scalar> table;
  table.kind = BetaTable<Scalar>::Kind::SmallStep;
  table.order = order;
  table.num_sets = num_sets;
  table.index = n;
  table.step = next - past[0];
  std::vector<std::size_t> q(num_sets);
  for (std::size_t flat = 0; flat < dense.size(); ++flat) {
    if (dense[flat] == Scalar(0)) {
      continue;
    }
    std::size_t rest = flat;
    for (std::size_t s = num_sets; s-- > 0;) {
      q[s] = grid.m_of(s, n) - rest % order;
      rest /= order;
    }
    table.entries.emplace(q, dense[flat]);
  }
  return table;
}

/// Coefficients `a^s_m` for the full step `m` of set `set_id`: the sum of
/// the small steps it spans divided by its step size.
template <typename Scalar, typename Time>
BetaTable<Scalar> accumulate_full_step(const BasicUnionGrid<Time>& grid,
                                       const std::size_t order,
                                       const int set_id, const std::size_t m) {
  const std::size_t s = grid.set_index(set_id);
  const auto start = grid.n_of(s, m);
  const auto end = grid.n_of(s, m + 1);
  if (!start || !end) {
    throw Error(ErrorKind::UndefinedStep,
                "set " + std::to_string(set_id) + " has no step " +
                    std::to_string(m));
  }
  BetaTable<Scalar> result;
  result.kind = BetaTable<Scalar>::Kind::FullStep;
  result.order = order;
  result.num_sets = grid.num_sets();
  result.index = m;
  result.set = s;
  result.step = time_as<Scalar>(grid.set_times(s)[m + 1]) -
                time_as<Scalar>(grid.set_times(s)[m]);
  for (std::size_t n = *start; n < *end; ++n) {
    const auto small = lts_small_step_beta<Scalar>(grid, order, n);
    for (const auto& [q, value] : small.entries) {
      result.add(q, value);
    }
  }
  for (auto& [q, value] : result.entries) {
    value /= result.step;
  }
  result.drop_zeros();
  return result;
}

/// The small-step table of a two-set grid assembled from the one-set,
/// other-set, and both-set selection terms.  Interpolation collapses to a
/// Kronecker delta on the set(s) evaluated at each union time.
template <typename Scalar, typename Time>
BetaTable<Scalar> two_set_beta(const BasicUnionGrid<Time>& grid,
                               const std::size_t order, const std::size_t n) {
  if (grid.num_sets() != 2) {
    throw Error(ErrorKind::WrongSetCount,
                "two-set coefficients need exactly 2 sets, got " +
                    std::to_string(grid.num_sets()));
  }
  detail::check_small_step(grid, order, n);
  const std::vector<Scalar> past =
      detail::union_past_times<Scalar>(grid, n, order);
  const Scalar next = time_as<Scalar>(grid.union_time(n + 1));
  const AbCoeffs<Scalar> ab =
      ab_coefficients(std::span<const Scalar>(past), next);

  BetaTable<Scalar> table;
  table.kind = BetaTable<Scalar>::Kind::SmallStep;
  table.order = order;
  table.num_sets = 2;
  table.index = n;
  table.step = ab.step;

  const std::size_t latest[2] = {grid.m_of(0, n), grid.m_of(1, n)};
  std::vector<Scalar> controls[2];
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t j = 0; j < order; ++j) {
      controls[s].push_back(time_as<Scalar>(grid.set_times(s)[latest[s] - j]));
    }
  }

  for (std::size_t self = 0; self < 2; ++self) {
    const std::size_t other = 1 - self;
    for (std::size_t j = 0; j < order; ++j) {
      const std::size_t q_self = latest[self] - j;
      const std::size_t union_index = grid.n_map(self)[q_self];
      const std::size_t i = n - union_index;
      if (i >= order) {
        continue;
      }
      const Scalar weight = ab.step * ab.alpha[i];
      std::vector<std::size_t> key(2);
      key[self] = q_self;
      if (grid.evaluates(union_index, other)) {
        // Both sets evaluated: counted once, from the first set.
        if (self == 0) {
          key[other] = grid.m_of(other, union_index);
          table.add(key, weight);
        }
        continue;
      }
      const Scalar t = time_as<Scalar>(grid.set_times(self)[q_self]);
      for (std::size_t jo = 0; jo < order; ++jo) {
        key[other] = latest[other] - jo;
        table.add(key, weight * lagrange_eval(
                                    t, std::span<const Scalar>(controls[other]),
                                    jo));
      }
    }
  }
  table.drop_zeros();
  return table;
}

/// Full-step table of one set coupled to one other set, from truncated
/// histories that need not start together.
///
/// `own` holds the set's last `order` evaluation times up to the step start
/// followed by the step end; `other` holds the other set's evaluation times
/// from its `order`-th latest at or before the step start up to (excluding)
/// the step end.  Keys are `{index into own, index into other}`; values are
/// normalized by the step size.
template <typename Scalar>
BetaTable<Scalar> windowed_pair_full_step(const std::size_t order,
                                          const std::vector<Scalar>& own,
                                          const std::vector<Scalar>& other) {
  if (order == 0 || own.size() != order + 1) {
    throw Error(ErrorKind::InsufficientHistory,
                "own window needs order + 1 times");
  }
  const Scalar& start = own[order - 1];
  const Scalar& end = own[order];
  for (std::size_t i = 1; i < own.size(); ++i) {
    if (!(own[i - 1] < own[i])) {
      throw Error(ErrorKind::NonMonotonic, "own window not increasing");
    }
  }
  for (std::size_t i = 0; i < other.size(); ++i) {
    if ((i > 0 && !(other[i - 1] < other[i])) || !(other[i] < end)) {
      throw Error(ErrorKind::NonMonotonic,
                  "other window not increasing before the step end");
    }
  }
  std::size_t other_latest_at_start = other.size();
  for (std::size_t i = 0; i < other.size() && !(start < other[i]); ++i) {
    other_latest_at_start = i;
  }
  if (other_latest_at_start == other.size() ||
      other_latest_at_start + 1 < order) {
    throw Error(ErrorKind::InsufficientHistory,
                "other window has too few times before the step start");
  }

  std::vector<Scalar> merged(own.begin(), own.end() - 1);
  merged.insert(merged.end(), other.begin(), other.end());
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  merged.push_back(end);

  BetaTable<Scalar> table;
  table.kind = BetaTable<Scalar>::Kind::FullStep;
  table.order = order;
  table.num_sets = 2;
  table.index = order - 1;
  table.set = 0;
  table.step = end - start;

  std::vector<std::vector<Scalar>> controls(2);
  std::size_t other_latest = other_latest_at_start;
  for (std::size_t n = 0; n + 1 < merged.size(); ++n) {
    if (merged[n] < start) {
      continue;
    }
    if (n + 1 < order) {
      throw Error(ErrorKind::InsufficientHistory,
                  "too few union times before the step start");
    }
    while (other_latest + 1 < other.size() &&
           !(merged[n] < other[other_latest + 1])) {
      ++other_latest;
    }
    controls[0].clear();
    controls[1].clear();
    std::vector<Scalar> past;
    for (std::size_t j = 0; j < order; ++j) {
      controls[0].push_back(own[order - 1 - j]);
      controls[1].push_back(other[other_latest - j]);
      past.push_back(merged[n - j]);
    }
    const std::vector<Scalar> dense = small_step_kernel(
        std::span<const Scalar>(past), merged[n + 1], controls);
    for (std::size_t flat = 0; flat < dense.size(); ++flat) {
      if (dense[flat] != Scalar(0)) {
        table.add({order - 1 - flat / order, other_latest - flat % order},
                  dense[flat]);
      }
    }
  }
  for (auto& [q, value] : table.entries) {
    value /= table.step;
  }
  table.drop_zeros();
  return table;
}

/// Sums a full-step table over the indices of all other sets, giving the
/// coefficients multiplying the set's own (volume) evaluations.
template <typename Scalar>
AbCoeffs<Scalar> marginalize_volume(const BetaTable<Scalar>& table,
                                    const std::size_t set) {
  if (table.kind != BetaTable<Scalar>::Kind::FullStep || table.set != set) {
    throw Error(ErrorKind::WrongKind,
                "volume marginal needs a full-step table of the same set");
  }
  AbCoeffs<Scalar> result;
  result.order = table.order;
  result.step = table.step;
  result.alpha.assign(table.order, Scalar(0));
  const std::size_t m = table.index;
  for (const auto& [q, value] : table.entries) {
    const std::size_t j = m - q[set];
    if (q[set] > m || j >= table.order) {
      throw Error(ErrorKind::WrongKind, "entry outside the set's step range");
    }
    result.alpha[j] += value;
  }
  return result;
}

}  // namespace lts
