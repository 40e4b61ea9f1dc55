#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/odeflow/series.hpp"

namespace hypermono::odeflow {

/// Linear system Y' = G(z) Y with G(z) = constant + sum_p R_p / (z - p).
struct FuchsianSystem {
  CMatrix constant;
  std::vector<std::pair<Complex, CMatrix>> poles;

  Eigen::Index size() const noexcept { return constant.rows(); }

  double distance_to_poles(Complex z) const {
    double d = kInf;
    for (const auto& [p, r] : poles) d = std::min(d, std::abs(z - p));
    return d;
  }

  /// Taylor coefficients of G about z0, k = 0..order-1.
  std::vector<CMatrix> taylor(Complex z0, std::size_t order) const {
    std::vector<CMatrix> g(order, CMatrix::Zero(size(), size()));
    if (order == 0) return g;
    g[0] = constant;
    for (const auto& [p, r] : poles) {
      // 1/(z - p) = sum_k (-1)^k (z - z0)^k / (z0 - p)^{k+1}
      const Complex d = z0 - p;
      Complex term = 1.0 / d;
      for (std::size_t k = 0; k < order; ++k) {
        g[k] += term * r;
        term *= -1.0 / d;
      }
    }
    return g;
  }

  CMatrix operator()(Complex z) const {
    CMatrix g = constant;
    for (const auto& [p, r] : poles) g += r / (z - p);
    return g;
  }
};

/// Polygonal path: basepoint, then each waypoint in turn; closed paths return
/// to the basepoint.
struct PathSpec {
  Complex basepoint{0.5, 0.0};
  std::vector<Complex> waypoints;
  bool closed = false;

  std::vector<Complex> vertices() const {
    std::vector<Complex> v{basepoint};
    for (const auto& w : waypoints)
      if (w != v.back()) v.push_back(w);
    if (closed && v.back() != basepoint) v.push_back(basepoint);
    return v;
  }

  PathSpec reversed() const {
    auto v = vertices();
    std::reverse(v.begin(), v.end());
    PathSpec p{v.front(), {v.begin() + 1, v.end()}, false};
    return p;
  }

  /// This path followed by `next` (which must start where this one ends).
  PathSpec then(const PathSpec& next) const {
    PathSpec p{basepoint, {}, false};
    auto v = vertices();
    p.waypoints.assign(v.begin() + 1, v.end());
    for (const auto& w : next.vertices()) p.waypoints.push_back(w);
    return p;
  }
};

/// Counterclockwise loop about `center`: out along the ray to the circle of
/// the given radius, once around, and back.
inline PathSpec loop_around(Complex center, Complex basepoint, double radius, std::size_t samples = 48) {
  const Complex dir = basepoint - center;
  if (std::abs(dir) == 0.0) fail(ErrorKind::InvalidArgument, "basepoint coincides with loop center");
  const double theta0 = std::arg(dir);
  PathSpec p{basepoint, {}, true};
  const Complex start = center + std::polar(radius, theta0);
  p.waypoints.push_back(start);
  for (std::size_t k = 1; k < samples; ++k)
    p.waypoints.push_back(center + std::polar(radius, theta0 + kTwoPi * static_cast<double>(k) / static_cast<double>(samples)));
  p.waypoints.push_back(start);
  return p;
}

/// Large counterclockwise loop about `center` that leaves the basepoint in
/// the direction `exit_angle`.
inline PathSpec loop_via(Complex center, Complex basepoint, double radius, double exit_angle,
                         std::size_t samples = 96) {
  PathSpec p{basepoint, {}, true};
  const Complex start = center + std::polar(radius, exit_angle);
  p.waypoints.push_back(start);
  for (std::size_t k = 1; k < samples; ++k)
    p.waypoints.push_back(center + std::polar(radius, exit_angle + kTwoPi * static_cast<double>(k) / static_cast<double>(samples)));
  p.waypoints.push_back(start);
  return p;
}

struct ContinuationOptions {
  double tol = 1e-12;          // total truncation budget over the path
  std::size_t max_order = 256; // hard cap on the per-step truncation order
  std::size_t min_order = 6;
  double max_step = 0.5;       // disc radius cap
  double clearance = 1e-3;     // minimal distance of the path from the poles
};

struct TransportResult {
  CMatrix transport;  // maps solution values at the start to values at the end
  std::size_t steps = 0;
  std::size_t max_order_used = 0;
  double estimated_error = 0.0;
};

namespace detail {

inline double segment_distance(Complex a, Complex b, Complex p) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(std::real((p - a) * std::conj(ab)) / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

}  // namespace detail

/// Step points of the disc chain along `path`; each step stays within half
/// the distance to the nearest pole.
inline std::vector<Complex> plan_steps(const FuchsianSystem& sys, const PathSpec& path, const ContinuationOptions& opt) {
  const auto v = path.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sys.distance_to_poles(v[i]) < opt.clearance)
      fail(ErrorKind::ClearanceViolated, "path vertex too close to a singular point");
    if (i + 1 < v.size())
      for (const auto& [p, r] : sys.poles)
        if (detail::segment_distance(v[i], v[i + 1], p) < opt.clearance)
          fail(ErrorKind::ClearanceViolated, "path segment passes too close to a singular point");
  }
  std::vector<Complex> pts{v.front()};
  for (std::size_t i = 1; i < v.size(); ++i) {
    Complex z = pts.back();
    const Complex target = v[i];
    while (z != target) {
      const double h = std::min(0.5 * sys.distance_to_poles(z), opt.max_step);
      const Complex d = target - z;
      z = std::abs(d) <= h ? target : z + h * d / std::abs(d);
      pts.push_back(z);
      if (pts.size() > 1'000'000) fail(ErrorKind::ClearanceViolated, "step count exploded near a singular point");
    }
  }
  return pts;
}

/// Local transport from z0 to z1 via the Taylor solution with Y(z0) = I,
/// raising the order until the tail estimate fits `budget`.
inline std::pair<CMatrix, std::size_t> local_transport(const FuchsianSystem& sys, Complex z0, Complex z1, double budget,
                                                       const ContinuationOptions& opt, double* err_out = nullptr) {
  const Complex t = z1 - z0;
  const double at = std::abs(t);
  const Eigen::Index n = sys.size();
  const auto g = sys.taylor(z0, opt.max_order + 1);
  std::vector<CMatrix> y{CMatrix::Identity(n, n)};
  CMatrix sum = y[0];
  double prev_term = norm_inf(y[0]);
  Complex tk = 1.0;
  for (std::size_t k = 0; k < opt.max_order; ++k) {
    CMatrix acc = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j <= k; ++j) acc.noalias() += g[k - j] * y[j];
    y.push_back(acc / static_cast<double>(k + 1));
    tk *= t;
    const CMatrix term = y.back() * tk;
    sum += term;
    const double term_norm = norm_inf(term);
    // Successive terms shrink roughly by |t| / dist <= 1/2, so twice the
    // last two terms dominates the remainder.
    const double estimate = 2.0 * (term_norm + prev_term);
    prev_term = term_norm;
    if (k + 1 >= opt.min_order && (estimate <= budget || at == 0.0)) {
      if (err_out) *err_out = estimate;
      return {sum, k + 1};
    }
  }
  fail(ErrorKind::ToleranceUnreachable,
       "per-step tolerance needs a truncation order above " + std::to_string(opt.max_order));
}

/// Analytic continuation of fundamental solutions along `path` by a chain of
/// overlapping discs.
inline TransportResult continue_along(const FuchsianSystem& sys, const PathSpec& path, const ContinuationOptions& opt = {}) {
  const auto pts = plan_steps(sys, path, opt);
  TransportResult r;
  r.transport = CMatrix::Identity(sys.size(), sys.size());
  r.steps = pts.size() - 1;
  if (r.steps == 0) return r;
  const double budget = opt.tol / static_cast<double>(r.steps);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0.0;
    auto [step, order] = local_transport(sys, pts[i], pts[i + 1], budget, opt, &err);
    r.transport = step * r.transport;
    r.max_order_used = std::max(r.max_order_used, order);
    r.estimated_error += err * std::max(1.0, norm_inf(r.transport));
  }
  return r;
}

}  // namespace hypermono::odeflow
