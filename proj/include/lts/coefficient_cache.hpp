// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "lts/coefficients.hpp"
#include "lts/rational.hpp"

namespace lts {

/// One coupling coefficient of a set's full step: multiplies the coupling
/// evaluated at (own window index, other window index).
struct PairEntry {
  std::size_t own = 0;
  std::size_t other = 0;
  double coefficient = 0.0;
};

/// Floating-point full-step coefficients for a pair of sets, normalized by
/// the step size.  Entries are in ascending (own, other) order.
struct PairTable {
  std::size_t order = 0;
  std::vector<PairEntry> entries;
};

/// Memo of runtime coefficients keyed by the relative step pattern.
///
/// Times are integer ticks.  Patterns are shifted so the step starts at 0
/// and divided by the gcd of all offsets; both the Adams-Bashforth and the
/// normalized full-step coefficients are invariant under these maps.  Every
/// value is generated in exact arithmetic and rounded once.  Not
/// synchronized: use one cache per evolution.
class CoefficientCache {
 public:
  /// Adams-Bashforth weights for a step through `times.back()` using the
  /// preceding times (increasing order); returned most recent first.
  const std::vector<double>& adams_bashforth(
      std::span<const std::int64_t> times) {
    if (times.size() < 2) {
      throw Error(ErrorKind::InsufficientHistory, "need a past time and an end");
    }
    Key key = normalize(times, {}, times.size() - 2);
    const auto it = ab_.find(key);
    if (it != ab_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    std::vector<Rational> past;
    for (std::size_t i = key.own.size() - 1; i-- > 0;) {
      past.emplace_back(key.own[i]);
    }
    const auto exact = ab_coefficients(past, Rational(key.own.back()));
    std::vector<double> values;
    for (const auto& alpha : exact.alpha) {
      values.push_back(to_double(alpha));
    }
    return ab_.emplace(std::move(key), std::move(values)).first->second;
  }

  /// Full-step coupling coefficients of a set whose window is `own`
  /// (`order` times up to the step start, then the step end) against a
  /// neighbor window `other`; see `windowed_pair_full_step`.
  const PairTable& pair_step(const std::size_t order,
                             std::span<const std::int64_t> own,
                             std::span<const std::int64_t> other) {
    if (order == 0 || own.size() != order + 1) {
      throw Error(ErrorKind::InsufficientHistory,
                  "own window needs order + 1 times");
    }
    Key key = normalize(own, other, order - 1);
    const auto it = pair_.find(key);
    if (it != pair_.end()) {
      ++hits_;
      return it->second;
    }
    ++misses_;
    const std::vector<Rational> own_exact(key.own.begin(), key.own.end());
    const std::vector<Rational> other_exact(key.other.begin(),
                                            key.other.end());
    const auto exact =
        windowed_pair_full_step<Rational>(order, own_exact, other_exact);
    PairTable table;
    table.order = order;
    for (const auto& [q, value] : exact.entries) {
      table.entries.push_back({q[0], q[1], to_double(value)});
    }
    return pair_.emplace(std::move(key), std::move(table)).first->second;
  }

  std::size_t size() const { return ab_.size() + pair_.size(); }
  std::size_t hits() const { return hits_; }
  std::size_t misses() const { return misses_; }

 private:
  struct Key {
    std::size_t order = 0;
    std::vector<std::int64_t> own;
    std::vector<std::int64_t> other;
    auto operator<=>(const Key&) const = default;
  };

  // The step start is own[start_index].
  static Key normalize(std::span<const std::int64_t> own,
                       std::span<const std::int64_t> other,
                       const std::size_t start_index) {
    const std::int64_t origin = own[start_index];
    std::int64_t divisor = 0;
    for (const auto t : own) {
      divisor = std::gcd(divisor, t - origin);
    }
    for (const auto t : other) {
      divisor = std::gcd(divisor, t - origin);
    }
    if (divisor == 0) {
      divisor = 1;
    }
    Key key;
    key.order = start_index + 1;
    for (const auto t : own) {
      key.own.push_back((t - origin) / divisor);
    }
    for (const auto t : other) {
      key.other.push_back((t - origin) / divisor);
    }
    return key;
  }

  std::map<Key, std::vector<double>> ab_;
  std::map<Key, PairTable> pair_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace lts
