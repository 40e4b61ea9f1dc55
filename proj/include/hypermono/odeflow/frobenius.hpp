#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/odeflow/matrix_power.hpp"
#include "hypermono/odeflow/series.hpp"

namespace hypermono::odeflow {

struct FrobeniusOptions {
  double resonance_tol = 1e-9;     // gap within this of a nonzero integer counts as resonant
  double cluster_tol = 1e-6;       // eigenvalues closer than this are one exponent
  double conditioning_tol = 1e-8;  // smallest admissible |k - (l_i - l_j)|
  double radius = 1.0;             // distance to the nearest other singular point
  // Exact exponents when known (e.g. 1 - beta_j); skips the numeric eigensolve.
  std::optional<std::vector<Complex>> exponents;
};

struct FrobeniusSolution {
  MatrixSeries series;  // Y(z) = X(z) z^E
  std::size_t shears = 0;
  std::vector<Complex> exponents;  // spectrum of E after shearing
};

namespace detail {

struct Cluster {
  Complex value;
  std::size_t multiplicity;
};

inline std::vector<Cluster> cluster_values(const std::vector<Complex>& values, double tol) {
  std::vector<Cluster> out;
  std::vector<Complex> sums;
  for (const auto& v : values) {
    bool placed = false;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (std::abs(out[i].value - v) < tol) {
        sums[i] += v;
        ++out[i].multiplicity;
        out[i].value = sums[i] / static_cast<double>(out[i].multiplicity);
        placed = true;
        break;
      }
    if (!placed) {
      out.push_back({v, 1});
      sums.push_back(v);
    }
  }
  return out;
}

/// Positive integer m with a - b within tol of m, or 0.
inline long resonant_gap(Complex a, Complex b, double tol) {
  const Complex d = a - b;
  const double m = std::round(d.real());
  if (m < 1.0 || std::abs(d - Complex(m, 0.0)) > tol) return 0;
  return static_cast<long>(m);
}

inline CMatrix coeff(const std::vector<CMatrix>& a, std::size_t k, Eigen::Index n) {
  return k < a.size() ? a[k] : CMatrix::Zero(n, n);
}

}  // namespace detail

/// Fundamental solution Y = X(z) z^E of theta Y = A(z) Y at z = 0, with A
/// given by its Taylor coefficients (missing ones are zero). Resonant
/// exponents are first separated by shearing transformations.
inline FrobeniusSolution frobenius_solve(std::vector<CMatrix> a, std::size_t order, const FrobeniusOptions& opt = {}) {
  if (a.empty()) fail(ErrorKind::InvalidArgument, "empty coefficient series");
  if (order < 1) fail(ErrorKind::InvalidArgument, "truncation order must be >= 1");
  const Eigen::Index n = a.front().rows();
  const auto nu = static_cast<std::size_t>(n);

  std::vector<Complex> values;
  if (opt.exponents) {
    if (opt.exponents->size() != nu) fail(ErrorKind::InvalidArgument, "exponent hint has the wrong length");
    values = *opt.exponents;
  } else {
    Eigen::ComplexEigenSolver<CMatrix> es(a.front(), false);
    for (Eigen::Index i = 0; i < n; ++i) values.push_back(es.eigenvalues()(i));
  }
  auto clusters = detail::cluster_values(values, opt.cluster_tol);

  long max_gap = 0;
  for (const auto& c1 : clusters)
    for (const auto& c2 : clusters) max_gap = std::max(max_gap, detail::resonant_gap(c1.value, c2.value, opt.resonance_tol));
  const std::size_t bound = nu * static_cast<std::size_t>(max_gap);

  // Gauge T(z) (polynomial): Y_original = T(z) Y_sheared.
  std::vector<CMatrix> gauge{CMatrix::Identity(n, n)};
  std::size_t shears = 0;
  for (;;) {
    std::optional<std::size_t> top;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = 0; j < clusters.size(); ++j)
        if (detail::resonant_gap(clusters[i].value, clusters[j].value, opt.resonance_tol) > 0 &&
            (!top || clusters[i].value.real() > clusters[*top].value.real()))
          top = i;
    if (!top) break;
    if (shears >= bound)
      fail(ErrorKind::ResonanceReductionFailed, "shearing did not separate the exponents within " +
                                                    std::to_string(bound) + " steps");
    const Complex lambda = clusters[*top].value;
    const auto r = static_cast<Eigen::Index>(clusters[*top].multiplicity);

    // Split C^n into the generalized eigenspace of lambda and its complement.
    CMatrix k = CMatrix::Identity(n, n);
    const CMatrix shifted = a.front() - lambda * CMatrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) k = k * shifted;
    Eigen::JacobiSVD<CMatrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
    CMatrix p(n, n);
    p.leftCols(r) = svd.matrixV().rightCols(r);
    p.rightCols(n - r) = svd.matrixU().leftCols(n - r);
    Eigen::FullPivLU<CMatrix> plu(p);
    if (!plu.isInvertible()) fail(ErrorKind::ResonanceReductionFailed, "eigenspace splitting is singular");
    const CMatrix pinv = plu.inverse();

    std::vector<CMatrix> b;
    for (const auto& ak : a) b.push_back(pinv * ak * p);
    const double scale = std::max(1.0, norm_inf(b.front()));
    if (norm_inf(b.front().topRightCorner(r, n - r)) > 1e-8 * scale)
      fail(ErrorKind::ResonanceReductionFailed, "leading coefficient is not block diagonal after splitting");

    // The upper-right block moves down one degree and the lower-left block
    // up one, so the series gains a term.
    std::vector<CMatrix> c;
    for (std::size_t kk = 0; kk <= b.size(); ++kk) {
      CMatrix ck = detail::coeff(b, kk, n);
      if (kk == 0) ck.topLeftCorner(r, r) -= CMatrix::Identity(r, r);
      ck.topRightCorner(r, n - r) = detail::coeff(b, kk + 1, n).topRightCorner(r, n - r);
      ck.bottomLeftCorner(n - r, r) =
          kk == 0 ? CMatrix::Zero(n - r, r) : CMatrix(detail::coeff(b, kk - 1, n).bottomLeftCorner(n - r, r));
      c.push_back(ck);
    }
    a = std::move(c);

    // T <- T * P * diag(z I_r, I).
    CMatrix p_lo = p;  // P diag(0, I)
    p_lo.leftCols(r).setZero();
    CMatrix p_hi = p;  // P diag(I, 0)
    p_hi.rightCols(n - r).setZero();
    std::vector<CMatrix> next(gauge.size() + 1, CMatrix::Zero(n, n));
    for (std::size_t i = 0; i < gauge.size(); ++i) {
      next[i] += gauge[i] * p_lo;
      next[i + 1] += gauge[i] * p_hi;
    }
    gauge = std::move(next);
    clusters[*top].value -= 1.0;
    ++shears;
    // The shifted exponent may now coincide with another one.
    for (std::size_t j = 0; j < clusters.size(); ++j)
      if (j != *top && std::abs(clusters[j].value - clusters[*top].value) < opt.cluster_tol) {
        clusters[j].multiplicity += clusters[*top].multiplicity;
        clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(*top));
        break;
      }
  }

  // (k - ad E) X_k = sum_{j<k} A_{k-j} X_j, X_0 = I, E = A_0.
  const CMatrix e = a.front();
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix ad = Eigen::kroneckerProduct(id, e).eval() - Eigen::kroneckerProduct(e.transpose(), id).eval();
  std::vector<CMatrix> x{id};
  for (std::size_t kk = 1; kk <= order; ++kk) {
    for (const auto& c1 : clusters)
      for (const auto& c2 : clusters)
        if (std::abs(static_cast<double>(kk) - (c1.value - c2.value)) < opt.conditioning_tol)
          fail(ErrorKind::IllConditioned, "k - ad(A0) is nearly singular at k = " + std::to_string(kk));
    CMatrix rhs = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j < kk; ++j) rhs.noalias() += detail::coeff(a, kk - j, n) * x[j];
    const CMatrix lhs = static_cast<double>(kk) * CMatrix::Identity(n * n, n * n) - ad;
    const CVector sol = lhs.partialPivLu().solve(Eigen::Map<const CVector>(rhs.data(), n * n));
    x.emplace_back(Eigen::Map<const CMatrix>(sol.data(), n, n));
  }

  // Undo the gauge: X_original = T(z) X(z), truncated.
  std::vector<CMatrix> full(order + 1, CMatrix::Zero(n, n));
  for (std::size_t i = 0; i < gauge.size(); ++i)
    for (std::size_t j = 0; i + j <= order; ++j) full[i + j] += gauge[i] * x[j];

  FrobeniusSolution out;
  out.series.center = 0.0;
  out.series.coefficients = std::move(full);
  out.series.exponent_matrix = e;
  out.series.radius_bound = opt.radius;
  out.shears = shears;
  for (const auto& c1 : clusters)
    for (std::size_t i = 0; i < c1.multiplicity; ++i) out.exponents.push_back(c1.value);
  return out;
}

/// Y(z) = X(z) z^E at a point of the principal sheet.
inline CMatrix evaluate(const FrobeniusSolution& s, Complex z) {
  const CMatrix x = s.series.holomorphic_part(z);
  return s.series.exponent_matrix ? CMatrix(x * matrix_power(*s.series.exponent_matrix, z)) : x;
}

/// Monodromy around 0 in the basis normalized to I at `basepoint`:
/// X(b) e^{2 pi i E} X(b)^{-1}.
inline CMatrix local_monodromy(const FrobeniusSolution& s, Complex basepoint) {
  const CMatrix x = s.series.holomorphic_part(basepoint);
  const CMatrix e = s.series.exponent_matrix ? *s.series.exponent_matrix : CMatrix::Zero(x.rows(), x.cols());
  Eigen::FullPivLU<CMatrix> lu(x);
  if (!lu.isInvertible()) fail(ErrorKind::IllConditioned, "X(basepoint) is singular");
  return x * exp_two_pi_i(e) * lu.inverse();
}

}  // namespace hypermono::odeflow
