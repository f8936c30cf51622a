// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "lts/dg/lgl.hpp"
#include "lts/error.hpp"
#include "lts/integrator.hpp"

namespace lts::dg {

/// Nodal values of u, one vector per element.
using FieldState = std::vector<std::vector<double>>;

/// Uniform 1D mesh of LGL collocation elements.
class DgMesh {
 public:
  DgMesh(const double left, const double right, const std::size_t elements,
         const std::size_t nodes_per_element, const bool periodic)
      : periodic_(periodic) {
    if (!(right > left) || elements == 0) {
      throw Error(ErrorKind::InvalidArgument, "empty mesh");
    }
    std::tie(nodes_, weights_) = lgl_nodes_weights(nodes_per_element);
    diff_ = diff_matrix(nodes_);
    for (std::size_t e = 0; e <= elements; ++e) {
      boundaries_.push_back(
          e == elements ? right
                        : left + (right - left) * static_cast<double>(e) /
                                     static_cast<double>(elements));
    }
  }

  std::size_t num_elements() const { return boundaries_.size() - 1; }
  std::size_t nodes_per_element() const { return nodes_.size(); }
  bool periodic() const { return periodic_; }
  double left() const { return boundaries_.front(); }
  double right() const { return boundaries_.back(); }
  const std::vector<double>& boundaries() const { return boundaries_; }
  const std::vector<double>& reference_nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  /// Row-major, nodes_per_element squared.
  const std::vector<double>& differentiation() const { return diff_; }

  double jacobian(const std::size_t e) const {
    return 0.5 * (boundaries_.at(e + 1) - boundaries_.at(e));
  }
  double coordinate(const std::size_t e, const std::size_t i) const {
    return 0.5 * (boundaries_.at(e + 1) + boundaries_.at(e)) +
           jacobian(e) * nodes_.at(i);
  }

  /// Samples `f(x)` on every node.
  template <typename F>
  FieldState sample(F&& f) const {
    FieldState u(num_elements(), std::vector<double>(nodes_per_element()));
    for (std::size_t e = 0; e < num_elements(); ++e) {
      for (std::size_t i = 0; i < nodes_per_element(); ++i) {
        u[e][i] = f(coordinate(e, i));
      }
    }
    return u;
  }

 private:
  std::vector<double> boundaries_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> diff_;
  bool periodic_ = false;
};

inline double burgers_flux(const double u) { return 0.5 * u * u; }

/// HLL interface flux for f(u) = u^2 / 2 with speeds min and max of the
/// two traces.
inline double hll_flux(const double ul, const double ur) {
  const double sl = std::min(ul, ur);
  const double sr = std::max(ul, ur);
  if (sl >= 0.0) {
    return burgers_flux(ul);
  }
  if (sr <= 0.0) {
    return burgers_flux(ur);
  }
  return (sr * burgers_flux(ul) - sl * burgers_flux(ur) +
          sl * sr * (ur - ul)) /
         (sr - sl);
}

/// Strong-form volume term -(1/J) D (u^2 / 2) on one element.
inline void volume_rhs(const DgMesh& mesh, const double jacobian,
                       std::span<const double> u, std::span<double> out) {
  const std::size_t p = mesh.nodes_per_element();
  const auto& d = mesh.differentiation();
  for (std::size_t i = 0; i < p; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      sum += d[i * p + j] * burgers_flux(u[j]);
    }
    out[i] = -sum / jacobian;
  }
}

inline std::vector<double> volume_rhs(const DgMesh& mesh, const double jacobian,
                                      std::span<const double> u) {
  std::vector<double> out(u.size());
  volume_rhs(mesh, jacobian, u, out);
  return out;
}

/// Adds the face lifting terms of one element: (F* - f(u)) / (J w) at the
/// left face and minus that at the right face.  A missing trace is an
/// error.
inline void boundary_coupling(const DgMesh& mesh, const double jacobian,
                              std::span<const double> u,
                              const std::optional<double> left_trace,
                              const std::optional<double> right_trace,
                              std::span<double> out) {
  if (!left_trace || !right_trace) {
    throw Error(ErrorKind::MissingTrace,
                std::string("no neighbor trace at the ") +
                    (!left_trace ? "left" : "right") + " face");
  }
  const auto& w = mesh.weights();
  const std::size_t last = u.size() - 1;
  out[0] += (hll_flux(*left_trace, u[0]) - burgers_flux(u[0])) /
            (jacobian * w[0]);
  out[last] -= (hll_flux(u[last], *right_trace) - burgers_flux(u[last])) /
               (jacobian * w[last]);
}

/// Quadrature integral of u over the mesh.
inline double conserved_integral(const DgMesh& mesh, const FieldState& u) {
  double total = 0.0;
  const auto& w = mesh.weights();
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    double element = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      element += w[i] * u.at(e).at(i);
    }
    total += mesh.jacobian(e) * element;
  }
  return total;
}

/// Exact smooth solution through u(0, x) = 1 - x^2, in the form that is
/// regular at t = 0.
inline double bump_solution(const double t, const double x) {
  const double radicand = 1.0 - 4.0 * t * (x - t);
  if (radicand < 0.0) {
    throw Error(ErrorKind::OutOfDomain,
                "bump solution undefined at t = " + std::to_string(t) +
                    ", x = " + std::to_string(x));
  }
  const double root = std::sqrt(radicand) + 1.0;
  return 2.0 * (root - 2.0 * x * (x - t)) / (root * root);
}

/// Periodic initial data exp(sin(8 pi x / 5)) / e, period 5/4.
inline double wave_initial(const double x) {
  return std::exp(std::sin(8.0 * std::numbers::pi * x / 5.0) - 1.0);
}

/// Time at which the wave data first steepens into a shock.
inline double shock_time() {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  return 5.0 * std::numbers::e / (8.0 * std::numbers::pi) /
         (std::exp(g) * std::sqrt(g));
}

/// Burgers equation on a DgMesh as a split system: each element is a set,
/// each shared face an edge (left element first).  Outer faces of a
/// non-periodic mesh take the exterior trace from `boundary(t, x)` and are
/// handled in the volume term, as is the self-coupling of a single
/// periodic element.
class BurgersSystem {
 public:
  using Boundary = std::function<double(double, double)>;

  BurgersSystem(DgMesh mesh, const double cfl_threshold,
                Boundary boundary = {})
      : mesh_(std::move(mesh)),
        threshold_(cfl_threshold),
        boundary_(std::move(boundary)) {
    const std::size_t n = mesh_.num_elements();
    if (!mesh_.periodic() && !boundary_) {
      throw Error(ErrorKind::InvalidArgument,
                  "non-periodic mesh needs boundary data");
    }
    for (std::size_t e = 0; e + 1 < n; ++e) {
      edges_.push_back({e, e + 1});
    }
    if (mesh_.periodic() && n > 1) {
      edges_.push_back({n - 1, 0});
    }
  }

  const DgMesh& mesh() const { return mesh_; }
  double cfl_threshold() const { return threshold_; }

  std::size_t num_sets() const { return mesh_.num_elements(); }
  std::size_t set_size(std::size_t) const { return mesh_.nodes_per_element(); }
  const std::vector<Edge>& edges() const { return edges_; }

  void volume(const std::size_t e, const double t, std::span<const double> u,
              std::span<double> out) const {
    const double jacobian = mesh_.jacobian(e);
    volume_rhs(mesh_, jacobian, u, out);
    const std::size_t n = mesh_.num_elements();
    const auto& w = mesh_.weights();
    const std::size_t last = u.size() - 1;
    if (mesh_.periodic()) {
      if (n == 1) {
        boundary_coupling(mesh_, jacobian, u, u[last], u[0], out);
      }
      return;
    }
    if (e == 0) {
      const double outside = boundary_(t, mesh_.left());
      out[0] += (hll_flux(outside, u[0]) - burgers_flux(u[0])) /
                (jacobian * w[0]);
    }
    if (e + 1 == n) {
      const double outside = boundary_(t, mesh_.right());
      out[last] -= (hll_flux(u[last], outside) - burgers_flux(u[last])) /
                   (jacobian * w[last]);
    }
  }

  void coupling(const std::size_t edge, std::span<const double> left,
                std::span<const double> right, std::span<double> out_left,
                std::span<double> out_right) const {
    const double flux = hll_flux(left.back(), right.front());
    const auto& w = mesh_.weights();
    out_left.back() -= (flux - burgers_flux(left.back())) /
                       (mesh_.jacobian(edges_[edge].a) * w.back());
    out_right.front() += (flux - burgers_flux(right.front())) /
                         (mesh_.jacobian(edges_[edge].b) * w.front());
  }

  /// Largest step with max|u| * step within the threshold.
  double cfl_bound(std::size_t, std::span<const double> u) const {
    double speed = 0.0;
    for (const double value : u) {
      speed = std::max(speed, std::abs(value));
    }
    return speed == 0.0 ? std::numeric_limits<double>::max()
                        : threshold_ / speed;
  }

 private:
  DgMesh mesh_;
  double threshold_;
  Boundary boundary_;
  std::vector<Edge> edges_;
};

/// Writes "element,x,u" rows with a header.
inline void write_snapshot(std::ostream& out, const DgMesh& mesh,
                           const FieldState& u) {
  out << "element,x,u\n";
  const auto precision = out.precision(17);
  for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
    for (std::size_t i = 0; i < mesh.nodes_per_element(); ++i) {
      out << e << ',' << mesh.coordinate(e, i) << ',' << u.at(e).at(i)
          << '\n';
    }
  }
  out.precision(precision);
}

}  // namespace lts::dg
