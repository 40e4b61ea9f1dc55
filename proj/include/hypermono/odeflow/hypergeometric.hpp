#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/odeflow/continuation.hpp"
#include "hypermono/odeflow/series.hpp"
#include "hypermono/rational.hpp"

namespace hypermono::odeflow {

/// Ascending coefficients of prod_j (t + r_j).
inline std::vector<Complex> expand_linear_factors(const std::vector<Complex>& roots_shift) {
  std::vector<Complex> c{Complex(1.0)};
  for (const auto& r : roots_shift) {
    std::vector<Complex> next(c.size() + 1, Complex(0.0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += r * c[i];
      next[i + 1] += c[i];
    }
    c = std::move(next);
  }
  return c;
}

/// The operator prod (theta + beta_j - 1) - z prod (theta + alpha_j) written
/// as sum_i (p_i - z q_i) theta^i.
struct ThetaFormEquation {
  std::size_t n = 0;
  std::vector<std::pair<Complex, Complex>> theta_coeffs;  // (constant, z-coefficient) of theta^i, i = 0..n
  std::vector<Complex> alpha;
  std::vector<Complex> beta;

  std::vector<Complex> p() const {
    std::vector<Complex> v;
    for (const auto& [c0, c1] : theta_coeffs) v.push_back(c0);
    return v;
  }
  std::vector<Complex> q() const {
    std::vector<Complex> v;
    for (const auto& [c0, c1] : theta_coeffs) v.push_back(-c1);
    return v;
  }

  /// Residue of the first-order system at 0 (companion of the indicial polynomial).
  CMatrix residue_at_zero() const {
    const auto ni = static_cast<Eigen::Index>(n);
    CMatrix r = CMatrix::Zero(ni, ni);
    for (Eigen::Index i = 0; i + 1 < ni; ++i) r(i, i + 1) = 1.0;
    for (Eigen::Index i = 0; i < ni; ++i) r(ni - 1, i) = -theta_coeffs[static_cast<std::size_t>(i)].first;
    return r;
  }

  /// Residue at 1; rank one, supported on the last row.
  CMatrix residue_at_one() const {
    const auto ni = static_cast<Eigen::Index>(n);
    CMatrix r = CMatrix::Zero(ni, ni);
    const auto pp = p();
    const auto qq = q();
    for (Eigen::Index i = 0; i < ni; ++i) r(ni - 1, i) = pp[static_cast<std::size_t>(i)] - qq[static_cast<std::size_t>(i)];
    return r;
  }

  /// Y' = (R0 / z + R1 / (z - 1)) Y for Y = (y, theta y, ..., theta^{n-1} y).
  FuchsianSystem first_order_system() const {
    const auto ni = static_cast<Eigen::Index>(n);
    return FuchsianSystem{CMatrix::Zero(ni, ni), {{Complex(0.0), residue_at_zero()}, {Complex(1.0), residue_at_one()}}};
  }

  /// Taylor coefficients at 0 of A(z) in theta Y = A(z) Y:
  /// A(z) = R0 - R1 (z + z^2 + ...).
  std::vector<CMatrix> theta_series(std::size_t order) const {
    const CMatrix r0 = residue_at_zero();
    const CMatrix r1 = residue_at_one();
    std::vector<CMatrix> a{r0};
    for (std::size_t k = 1; k <= order; ++k) a.push_back(-r1);
    return a;
  }

  /// Indicial roots at 0: the eigenvalues of the residue there.
  std::vector<Complex> indicial_roots() const {
    std::vector<Complex> r;
    for (const auto& b : beta) r.push_back(Complex(1.0) - b);
    return r;
  }

  /// Applies the operator to y given the values y, theta y, ..., theta^n y at z.
  Complex apply(Complex z, const std::vector<Complex>& theta_powers) const {
    Complex acc(0.0);
    for (std::size_t i = 0; i <= n; ++i) acc += (theta_coeffs[i].first + z * theta_coeffs[i].second) * theta_powers[i];
    return acc;
  }
};

inline ThetaFormEquation hypergeometric_system(const std::vector<Complex>& alpha, const std::vector<Complex>& beta) {
  if (alpha.size() != beta.size()) fail(ErrorKind::DegreeMismatch, "alpha and beta lists differ in length");
  if (alpha.empty()) fail(ErrorKind::InvalidArgument, "need at least one parameter");
  std::vector<Complex> bshift;
  for (const auto& b : beta) bshift.push_back(b - 1.0);
  const auto p = expand_linear_factors(bshift);
  const auto q = expand_linear_factors(alpha);
  ThetaFormEquation eq;
  eq.n = alpha.size();
  eq.alpha = alpha;
  eq.beta = beta;
  for (std::size_t i = 0; i <= eq.n; ++i) eq.theta_coeffs.emplace_back(p[i], -q[i]);
  return eq;
}

/// The same equation in the chart w = 1/z; its indicial roots at w = 0 are
/// the alpha_j.
inline ThetaFormEquation infinity_chart(const ThetaFormEquation& eq) {
  std::vector<Complex> a2, b2;
  for (const auto& b : eq.beta) a2.push_back(Complex(1.0) - b);
  for (const auto& a : eq.alpha) b2.push_back(Complex(1.0) - a);
  return hypergeometric_system(a2, b2);
}

inline std::vector<Complex> to_complex(const std::vector<double>& v) {
  return {v.begin(), v.end()};
}

/// Exact check: do two indicial roots 1 - beta_j at 0 differ by a nonzero integer?
inline bool exact_resonance(const std::vector<Rational>& beta) {
  for (std::size_t i = 0; i < beta.size(); ++i)
    for (std::size_t j = 0; j < beta.size(); ++j) {
      const Rational d = beta[i] - beta[j];
      if (d != 0 && is_integer(d)) return true;
    }
  return false;
}

}  // namespace hypermono::odeflow
