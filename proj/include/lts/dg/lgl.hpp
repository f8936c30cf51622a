// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "lts/error.hpp"

namespace lts::dg {

/// Legendre-Gauss-Lobatto nodes (increasing) and weights on [-1, 1]: the
/// endpoints plus the roots of P'_{p-1}.  Newton iteration on
/// x P_{p-1} - P_{p-2} from the Chebyshev-Gauss-Lobatto points.
inline std::pair<std::vector<double>, std::vector<double>> lgl_nodes_weights(
    const std::size_t p) {
  if (p < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "need at least 2 LGL nodes, got " + std::to_string(p));
  }
  const std::size_t n = p - 1;  // polynomial degree
  std::vector<double> x(p);
  std::vector<double> legendre(p);  // P_n at each node
  for (std::size_t i = 0; i < p; ++i) {
    x[i] = -std::cos(std::numbers::pi * static_cast<double>(i) /
                     static_cast<double>(n));
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (int iteration = 0; iteration < 100; ++iteration) {
      double p_prev = 1.0;
      double p_curr = x[i];
      for (std::size_t k = 2; k <= n; ++k) {
        const double p_next =
            ((2.0 * static_cast<double>(k) - 1.0) * x[i] * p_curr -
             (static_cast<double>(k) - 1.0) * p_prev) /
            static_cast<double>(k);
        p_prev = p_curr;
        p_curr = p_next;
      }
      legendre[i] = p_curr;
      if (i == 0 || i == n) {
        break;
      }
      const double delta =
          (x[i] * p_curr - p_prev) / (static_cast<double>(p) * p_curr);
      x[i] -= delta;
      if (std::abs(delta) <= 1e-15) {
        break;
      }
    }
  }
  // Recompute P_n at the converged nodes for the weights.
  std::vector<double> w(p);
  for (std::size_t i = 0; i < p; ++i) {
    double p_prev = 1.0;
    double p_curr = x[i];
    for (std::size_t k = 2; k <= n; ++k) {
      const double p_next =
          ((2.0 * static_cast<double>(k) - 1.0) * x[i] * p_curr -
           (static_cast<double>(k) - 1.0) * p_prev) /
          static_cast<double>(k);
      p_prev = p_curr;
      p_curr = p_next;
    }
    w[i] = 2.0 / (static_cast<double>(n) * static_cast<double>(p) * p_curr *
                  p_curr);
  }
  // Enforce exact symmetry.
  for (std::size_t i = 0; i < p / 2; ++i) {
    const double node = 0.5 * (x[p - 1 - i] - x[i]);
    const double weight = 0.5 * (w[i] + w[p - 1 - i]);
    x[i] = -node;
    x[p - 1 - i] = node;
    w[i] = w[p - 1 - i] = weight;
  }
  if (p % 2 == 1) {
    x[p / 2] = 0.0;
  }
  return {std::move(x), std::move(w)};
}

/// Row-major nodal differentiation matrix: entry (i, j) is the derivative
/// of the Lagrange polynomial j at node i.
inline std::vector<double> diff_matrix(const std::vector<double>& nodes) {
  const std::size_t p = nodes.size();
  std::vector<double> bary(p, 1.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = 0; k < p; ++k) {
      if (k != j) {
        const double gap = nodes[j] - nodes[k];
        if (gap == 0.0) {
          throw Error(ErrorKind::DuplicateNodes,
                      "nodes " + std::to_string(j) + " and " +
                          std::to_string(k) + " coincide");
        }
        bary[j] /= gap;
      }
    }
  }
  std::vector<double> d(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    double diagonal = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      if (j != i) {
        d[i * p + j] = bary[j] / bary[i] / (nodes[i] - nodes[j]);
        diagonal -= d[i * p + j];
      }
    }
    d[i * p + i] = diagonal;
  }
  return d;
}

}  // namespace lts::dg
