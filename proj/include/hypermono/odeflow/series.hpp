#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "hypermono/error.hpp"

namespace hypermono::odeflow {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline const double kTwoPi = 2.0 * std::acos(-1.0);

/// Truncated scalar power series sum c_k (z - center)^k, convergent for
/// |z - center| < radius.
struct PowerSeries {
  Complex center{0.0, 0.0};
  std::vector<Complex> coefficients;
  double radius = kInf;

  Complex coefficient(std::size_t k) const { return k < coefficients.size() ? coefficients[k] : Complex(0.0); }

  Complex operator()(Complex z) const {
    Complex acc(0.0);
    const Complex t = z - center;
    for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * t + coefficients[k];
    return acc;
  }

  static PowerSeries constant(Complex c, Complex center = {}) { return {center, {c}, kInf}; }

  /// Expansion of 1 / (z - pole) about `center`, `order` + 1 terms.
  static PowerSeries pole(Complex pole, Complex center, std::size_t order) {
    PowerSeries s{center, {}, std::abs(center - pole)};
    const Complex d = center - pole;
    Complex term = 1.0 / d;
    for (std::size_t k = 0; k <= order; ++k) {
      s.coefficients.push_back(term);
      term *= -1.0 / d;
    }
    return s;
  }
};

/// Truncated matrix series X(z) = sum X_k (z - center)^k, optionally times
/// (z - center)^E for a Frobenius solution.
struct MatrixSeries {
  Complex center{0.0, 0.0};
  std::vector<CMatrix> coefficients;
  std::optional<CMatrix> exponent_matrix;
  double radius_bound = kInf;

  std::size_t order() const noexcept { return coefficients.empty() ? 0 : coefficients.size() - 1; }

  /// Holomorphic factor only.
  CMatrix holomorphic_part(Complex z) const {
    const Complex t = z - center;
    CMatrix acc = CMatrix::Zero(coefficients.front().rows(), coefficients.front().cols());
    for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * t + coefficients[k];
    return acc;
  }
};

inline double norm_inf(const CMatrix& m) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).cwiseAbs().sum());
  return best;
}

namespace detail {

/// Taylor recursion for u' = G(z) u about a center:
///   (k + 1) u_{k+1} = sum_{j=0}^{k} G_{k-j} u_j.
/// `g` must hold at least `order` coefficients; missing ones count as zero.
inline std::vector<CMatrix> taylor_recursion(const std::vector<CMatrix>& g, const CMatrix& u0, std::size_t order) {
  std::vector<CMatrix> u;
  u.reserve(order + 1);
  u.push_back(u0);
  for (std::size_t k = 0; k < order; ++k) {
    CMatrix acc = CMatrix::Zero(u0.rows(), u0.cols());
    for (std::size_t j = 0; j <= k; ++j)
      if (k - j < g.size()) acc.noalias() += g[k - j] * u[j];
    u.push_back(acc / static_cast<double>(k + 1));
  }
  return u;
}

}  // namespace detail

/// Solution of a scalar order-n equation y^(n) + f_{n-1} y^(n-1) + ... + f_0 y = 0
/// about an ordinary point, with the majorant constants from the
/// existence proof attached.
struct SeriesSolution {
  Complex center{0.0, 0.0};
  std::vector<Complex> coefficients;  // y = sum coefficients[k] (z - center)^k
  std::vector<CVector> state;         // Taylor coefficients of (y, y', ..., y^(n-1))
  double radius_bound = kInf;
  double majorant_R = 1.0;  // sup_k |G_k| R^k <= majorant_M
  double majorant_M = 1.0;
  double majorant_MN = 0.0;  // max_{j <= N} |u_j| R^j

  Complex operator()(Complex z) const {
    Complex acc(0.0);
    const Complex t = z - center;
    for (std::size_t k = coefficients.size(); k-- > 0;) acc = acc * t + coefficients[k];
    return acc;
  }

  /// Majorant bound on sum_{k > N} |u_k| r^k: since |u_k| R^k <= M^{k-N} M_N
  /// beyond the truncation, the tail is dominated by a geometric series in
  /// q = M r / R. Infinite when q >= 1.
  double tail_bound(double r) const {
    const std::size_t n = coefficients.empty() ? 0 : coefficients.size() - 1;
    const double q = majorant_M * r / majorant_R;
    if (q >= 1.0) return kInf;
    return majorant_MN * std::pow(r / majorant_R, static_cast<double>(n)) * q / (1.0 - q);
  }
};

/// Power-series solution at an ordinary point. `coeff_series[i]` is f_i about
/// a common center; `initial` holds y, y', ..., y^(n-1) at the center.
inline SeriesSolution series_solve(const std::vector<PowerSeries>& coeff_series, const std::vector<Complex>& initial,
                                   std::size_t order) {
  const std::size_t n = coeff_series.size();
  if (n == 0 || initial.size() != n) fail(ErrorKind::InvalidArgument, "need n coefficient series and n initial values");
  if (order < 1) fail(ErrorKind::InvalidArgument, "truncation order must be >= 1");
  const Complex center = coeff_series.front().center;
  double radius = kInf;
  for (const auto& s : coeff_series) {
    if (s.center != center) fail(ErrorKind::InvalidArgument, "coefficient series must share a center");
    radius = std::min(radius, s.radius);
  }

  // First-order companion system u' = G u with u = (y, y', ..., y^(n-1)).
  std::vector<CMatrix> g(order, CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  for (std::size_t k = 0; k < order; ++k) {
    if (k == 0)
      for (std::size_t i = 0; i + 1 < n; ++i) g[0](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      g[k](static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(i)) = -coeff_series[i].coefficient(k);
  }
  CMatrix u0(static_cast<Eigen::Index>(n), 1);
  for (std::size_t i = 0; i < n; ++i) u0(static_cast<Eigen::Index>(i), 0) = initial[i];
  const auto u = detail::taylor_recursion(g, u0, order);

  SeriesSolution s;
  s.center = center;
  s.radius_bound = radius;
  for (const auto& uk : u) {
    s.coefficients.push_back(uk(0, 0));
    s.state.emplace_back(uk.col(0));
  }
  s.majorant_R = std::isfinite(radius) ? 0.9 * radius : 1.0;
  double m = 1.0;
  double rk = 1.0;
  for (std::size_t k = 0; k < g.size(); ++k, rk *= s.majorant_R) m = std::max(m, norm_inf(g[k]) * rk);
  s.majorant_M = m * std::max(1.0, s.majorant_R);
  rk = 1.0;
  for (std::size_t k = 0; k < u.size(); ++k, rk *= s.majorant_R)
    s.majorant_MN = std::max(s.majorant_MN, norm_inf(u[k]) * rk);
  return s;
}

}  // namespace hypermono::odeflow
