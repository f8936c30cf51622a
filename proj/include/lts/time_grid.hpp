// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lts/error.hpp"
#include "lts/rational.hpp"

namespace lts {

inline constexpr int default_resolution_exponent = -40;

/// An exact dyadic time: `ticks * 2^resolution_exponent`.
///
/// Comparison is exact.  Values with different resolutions are compared
/// after rescaling to the finer one.
struct TickTime {
  std::int64_t ticks = 0;
  int resolution_exponent = default_resolution_exponent;

  TickTime() = default;
  constexpr explicit TickTime(const std::int64_t t,
                              const int r = default_resolution_exponent)
      : ticks(t), resolution_exponent(r) {}

  Rational to_rational() const {
    Rational result{BigInt(ticks)};
    if (resolution_exponent >= 0) {
      result *= Rational(BigInt(1) << resolution_exponent);
    } else {
      result /= Rational(BigInt(1) << -resolution_exponent);
    }
    return result;
  }

  double to_double() const {
    return std::ldexp(static_cast<double>(ticks), resolution_exponent);
  }

  friend std::strong_ordering operator<=>(const TickTime& a,
                                          const TickTime& b) {
    if (a.resolution_exponent == b.resolution_exponent) {
      return a.ticks <=> b.ticks;
    }
    // Rescale the coarser value onto the finer grid.
    const int shift = a.resolution_exponent - b.resolution_exponent;
    if (std::abs(shift) >= 63) {
      return a.to_rational() < b.to_rational()   ? std::strong_ordering::less
             : a.to_rational() > b.to_rational() ? std::strong_ordering::greater
                                                 : std::strong_ordering::equal;
    }
    const __int128 lhs =
        shift > 0 ? static_cast<__int128>(a.ticks) << shift : a.ticks;
    const __int128 rhs =
        shift < 0 ? static_cast<__int128>(b.ticks) << -shift : b.ticks;
    return lhs <=> rhs;
  }
  friend bool operator==(const TickTime& a, const TickTime& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const TickTime& t) {
    return os << t.ticks;
  }
};

/// Converts an exact rational time to ticks at resolution `2^r`.
inline TickTime to_ticks(const Rational& t,
                         const int resolution_exponent =
                             default_resolution_exponent) {
  Rational scaled = t;
  if (resolution_exponent <= 0) {
    scaled *= Rational(BigInt(1) << -resolution_exponent);
  } else {
    scaled /= Rational(BigInt(1) << resolution_exponent);
  }
  if (denominator_of(scaled) != 1) {
    throw Error(ErrorKind::NonRepresentable,
                to_string(t) + " is not a multiple of 2^" +
                    std::to_string(resolution_exponent));
  }
  const BigInt n = numerator_of(scaled);
  if (n > std::numeric_limits<std::int64_t>::max() ||
      n < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::NonRepresentable,
                to_string(t) + " overflows the tick counter");
  }
  return TickTime(n.convert_to<std::int64_t>(), resolution_exponent);
}

/// Exact conversion of a binary floating-point time.
inline TickTime to_ticks(const double t, const int resolution_exponent =
                                             default_resolution_exponent) {
  const double scaled = std::ldexp(t, -resolution_exponent);
  if (!std::isfinite(scaled) || scaled != std::floor(scaled) ||
      std::abs(scaled) > 9.0e18) {
    throw Error(ErrorKind::NonRepresentable,
                "time not representable at resolution 2^" +
                    std::to_string(resolution_exponent));
  }
  return TickTime(static_cast<std::int64_t>(scaled), resolution_exponent);
}

/// Conversions of a time value into a coefficient scalar.
template <typename Scalar>
Scalar time_as(const TickTime& t) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return t.to_rational();
  } else {
    return static_cast<Scalar>(t.to_double());
  }
}
template <typename Scalar>
Scalar time_as(const Rational& t) {
  return rational_cast<Scalar>(t);
}
template <typename Scalar>
Scalar time_as(const double t) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return Rational(t);
  } else {
    return static_cast<Scalar>(t);
  }
}

/// Evaluation times of one set of degrees of freedom.
template <typename Time>
struct BasicStepSequence {
  int set_id = 0;
  std::vector<Time> times;
};
using StepSequence = BasicStepSequence<TickTime>;

/// The merged evaluation times of several sets, with the index maps
/// between per-set indices `m` and union indices `n`.
///
/// `m_of(s, n)` is the index of the last evaluation of set `s` at or
/// before union time `n`; `n_of(s, m)` is the union index of evaluation
/// `m` of set `s`.
template <typename Time>
class BasicUnionGrid {
 public:
  BasicUnionGrid() = default;

  std::size_t num_sets() const { return set_ids_.size(); }
  std::size_t size() const { return union_times_.size(); }

  const std::vector<Time>& union_times() const { return union_times_; }
  const Time& union_time(const std::size_t n) const {
    return union_times_.at(n);
  }

  const std::vector<int>& set_ids() const { return set_ids_; }
  int set_id(const std::size_t s) const { return set_ids_.at(s); }

  /// Position of a set id in this grid.
  std::size_t set_index(const int id) const {
    const auto it = std::find(set_ids_.begin(), set_ids_.end(), id);
    if (it == set_ids_.end()) {
      throw Error(ErrorKind::UnknownSet,
                  "no set with id " + std::to_string(id));
    }
    return static_cast<std::size_t>(it - set_ids_.begin());
  }

  const std::vector<Time>& set_times(const std::size_t s) const {
    return set_times_.at(s);
  }

  std::size_t m_of(const std::size_t s, const std::size_t n) const {
    return m_map_.at(s).at(n);
  }
  const std::vector<std::size_t>& m_map(const std::size_t s) const {
    return m_map_.at(s);
  }

  std::optional<std::size_t> n_of(const std::size_t s,
                                  const std::size_t m) const {
    if (m >= n_map_.at(s).size()) {
      return std::nullopt;
    }
    return n_map_[s][m];
  }
  const std::vector<std::size_t>& n_map(const std::size_t s) const {
    return n_map_.at(s);
  }

  /// Whether union time `n` is an evaluation time of set `s`.
  bool evaluates(const std::size_t n, const std::size_t s) const {
    return selection_.at(n).at(s);
  }

  template <typename T>
  friend BasicUnionGrid<T> merge_union(
      const std::vector<BasicStepSequence<T>>& sequences);

 private:
  std::vector<Time> union_times_;
  std::vector<int> set_ids_;
  std::vector<std::vector<Time>> set_times_;
  std::vector<std::vector<std::size_t>> m_map_;
  std::vector<std::vector<std::size_t>> n_map_;
  std::vector<std::vector<bool>> selection_;
};
using UnionGrid = BasicUnionGrid<TickTime>;

template <typename Time>
BasicUnionGrid<Time> merge_union(
    const std::vector<BasicStepSequence<Time>>& sequences) {
  if (sequences.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no sequences to merge");
  }
  for (const auto& seq : sequences) {
    if (seq.times.empty()) {
      throw Error(ErrorKind::InvalidArgument,
                  "set " + std::to_string(seq.set_id) + " has no times");
    }
    for (std::size_t i = 1; i < seq.times.size(); ++i) {
      if (!(seq.times[i - 1] < seq.times[i])) {
        throw Error(ErrorKind::NonMonotonic,
                    "times of set " + std::to_string(seq.set_id) +
                        " are not strictly increasing");
      }
    }
    if (!(seq.times.front() == sequences.front().times.front())) {
      throw Error(ErrorKind::UnsynchronizedStart,
                  "set " + std::to_string(seq.set_id) +
                      " does not start with the other sets");
    }
  }

  BasicUnionGrid<Time> grid;
  for (const auto& seq : sequences) {
    if (std::find(grid.set_ids_.begin(), grid.set_ids_.end(), seq.set_id) !=
        grid.set_ids_.end()) {
      throw Error(ErrorKind::InvalidArgument,
                  "duplicate set id " + std::to_string(seq.set_id));
    }
    grid.set_ids_.push_back(seq.set_id);
    grid.set_times_.push_back(seq.times);
    grid.union_times_.insert(grid.union_times_.end(), seq.times.begin(),
                             seq.times.end());
  }
  std::sort(grid.union_times_.begin(), grid.union_times_.end());
  grid.union_times_.erase(
      std::unique(grid.union_times_.begin(), grid.union_times_.end()),
      grid.union_times_.end());

  const std::size_t num_union = grid.union_times_.size();
  grid.selection_.assign(num_union, std::vector<bool>(sequences.size()));
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& times = sequences[s].times;
    std::vector<std::size_t> m_map(num_union);
    std::vector<std::size_t> n_map(times.size());
    std::size_t m = 0;
    for (std::size_t n = 0; n < num_union; ++n) {
      while (m + 1 < times.size() && !(grid.union_times_[n] < times[m + 1])) {
        ++m;
      }
      m_map[n] = m;
      if (times[m] == grid.union_times_[n]) {
        n_map[m] = n;
        grid.selection_[n][s] = true;
      }
    }
    grid.m_map_.push_back(std::move(m_map));
    grid.n_map_.push_back(std::move(n_map));
  }
  return grid;
}

/// The two index maps of one set, looked up by set id.
template <typename Time>
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> index_maps(
    const BasicUnionGrid<Time>& grid, const int set_id) {
  const std::size_t s = grid.set_index(set_id);
  return {grid.m_map(s), grid.n_map(s)};
}

// Text format:
//   resolution_exponent <r>
//   <ticks> <ticks> ...      (one line per set, set ids 0, 1, ...)
// Blank lines and lines starting with '#' are ignored.

inline void write_sequences(std::ostream& os,
                            const std::vector<StepSequence>& sequences) {
  const int r = sequences.empty()
                    ? default_resolution_exponent
                    : sequences.front().times.front().resolution_exponent;
  os << "resolution_exponent " << r << '\n';
  for (const auto& seq : sequences) {
    for (std::size_t i = 0; i < seq.times.size(); ++i) {
      if (seq.times[i].resolution_exponent != r) {
        throw Error(ErrorKind::InvalidArgument,
                    "mixed resolutions cannot be serialized");
      }
      os << (i == 0 ? "" : " ") << seq.times[i].ticks;
    }
    os << '\n';
  }
}

inline std::vector<StepSequence> read_sequences(std::istream& is) {
  std::vector<StepSequence> sequences;
  std::optional<int> resolution;
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    std::istringstream fields(line);
    if (!resolution) {
      std::string key;
      int r = 0;
      if (!(fields >> key >> r) || key != "resolution_exponent") {
        throw Error(ErrorKind::ParseError,
                    "expected 'resolution_exponent <r>' header");
      }
      resolution = r;
      continue;
    }
    StepSequence seq;
    seq.set_id = static_cast<int>(sequences.size());
    std::string token;
    while (fields >> token) {
      std::size_t used = 0;
      std::int64_t ticks = 0;
      try {
        ticks = std::stoll(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw Error(ErrorKind::ParseError, "bad tick count '" + token + "'");
      }
      seq.times.emplace_back(ticks, *resolution);
    }
    sequences.push_back(std::move(seq));
  }
  if (!resolution) {
    throw Error(ErrorKind::ParseError, "missing resolution header");
  }
  return sequences;
}

}  // namespace lts
