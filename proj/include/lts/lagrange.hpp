// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "lts/error.hpp"

namespace lts {

namespace detail {
template <typename Scalar>
void check_distinct(std::span<const Scalar> nodes) {
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (nodes[a] == nodes[b]) {
        throw Error(ErrorKind::DuplicateNodes,
                    "interpolation nodes " + std::to_string(a) + " and " +
                        std::to_string(b) + " coincide");
      }
    }
  }
}

template <typename Scalar>
void check_index(std::span<const Scalar> nodes, const std::size_t j) {
  if (j >= nodes.size()) {
    throw Error(ErrorKind::InvalidArgument,
                "Lagrange index " + std::to_string(j) + " out of range");
  }
}
}  // namespace detail

/// Value at `t` of the Lagrange polynomial that is 1 at `nodes[j]` and 0 at
/// the other nodes.
template <typename Scalar>
Scalar lagrange_eval(const Scalar& t, std::span<const Scalar> nodes,
                     const std::size_t j) {
  detail::check_index(nodes, j);
  detail::check_distinct(nodes);
  Scalar numerator(1);
  Scalar denominator(1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i != j) {
      numerator *= t - nodes[i];
      denominator *= nodes[j] - nodes[i];
    }
  }
  return numerator / denominator;
}

template <typename Scalar>
Scalar lagrange_eval(const Scalar& t, const std::vector<Scalar>& nodes,
                     const std::size_t j) {
  return lagrange_eval(t, std::span<const Scalar>(nodes), j);
}

/// Monomial coefficients (ascending powers of `t - origin`) of the Lagrange
/// polynomial `j` for `nodes`.
template <typename Scalar>
std::vector<Scalar> lagrange_monomials(std::span<const Scalar> nodes,
                                       const std::size_t j,
                                       const Scalar& origin) {
  detail::check_index(nodes, j);
  detail::check_distinct(nodes);
  std::vector<Scalar> poly{Scalar(1)};
  Scalar denominator(1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i == j) {
      continue;
    }
    // Multiply by (tau - c) with tau = t - origin.
    const Scalar c = nodes[i] - origin;
    std::vector<Scalar> next(poly.size() + 1, Scalar(0));
    for (std::size_t p = 0; p < poly.size(); ++p) {
      next[p + 1] += poly[p];
      next[p] -= c * poly[p];
    }
    poly = std::move(next);
    denominator *= nodes[j] - nodes[i];
  }
  for (auto& coefficient : poly) {
    coefficient /= denominator;
  }
  return poly;
}

/// Exact integral of Lagrange polynomial `j` over [a, b], by termwise
/// integration of its monomial expansion about `a`.
template <typename Scalar>
Scalar lagrange_integral(const Scalar& a, const Scalar& b,
                         std::span<const Scalar> nodes, const std::size_t j) {
  const std::vector<Scalar> poly = lagrange_monomials(nodes, j, a);
  const Scalar width = b - a;
  Scalar power = width;
  Scalar result(0);
  for (std::size_t p = 0; p < poly.size(); ++p) {
    result += poly[p] * power / Scalar(static_cast<int>(p + 1));
    power *= width;
  }
  return result;
}

template <typename Scalar>
Scalar lagrange_integral(const Scalar& a, const Scalar& b,
                         const std::vector<Scalar>& nodes,
                         const std::size_t j) {
  return lagrange_integral(a, b, std::span<const Scalar>(nodes), j);
}

}  // namespace lts
