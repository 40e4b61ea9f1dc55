#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/exactpoly.hpp"
#include "hypermono/odeflow/continuation.hpp"
#include "hypermono/odeflow/frobenius.hpp"
#include "hypermono/odeflow/hypergeometric.hpp"
#include "hypermono/odeflow/series.hpp"

namespace hypermono::odeflow {

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian
/// method, O(n^3)). Returns row -> column.
inline std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {};
  for (const auto& row : cost)
    if (row.size() != n) fail(ErrorKind::InvalidArgument, "assignment cost matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; p[j] = row matched to column j.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

struct EigenvalueMatch {
  std::string matrix;  // "M0", "Minf"
  Complex predicted;
  Complex numeric;
  double error = 0.0;          // |numeric - predicted|
  double cluster_error = 0.0;  // |mean of numeric over equal predictions - predicted|
};

/// Matches numeric eigenvalues to predicted ones. The cluster error compares
/// means over groups of equal predictions, which is what survives when a
/// Jordan block splits the numeric eigenvalues.
inline std::vector<EigenvalueMatch> match_eigenvalues(const std::string& label, const std::vector<Complex>& predicted,
                                                      const std::vector<Complex>& numeric) {
  const std::size_t n = predicted.size();
  if (numeric.size() != n) fail(ErrorKind::InvalidArgument, "eigenvalue lists differ in length");
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(predicted[i] - numeric[j]);
  const auto assign = min_cost_assignment(cost);
  std::vector<EigenvalueMatch> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex num = numeric[assign[i]];
    out.push_back({label, predicted[i], num, std::abs(num - predicted[i]), 0.0});
  }
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum(0.0);
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(predicted[j] - predicted[i]) < 1e-9) {
        sum += out[j].numeric;
        ++count;
      }
    out[i].cluster_error = std::abs(sum / static_cast<double>(count) - predicted[i]);
  }
  return out;
}

inline std::vector<Complex> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, false);
  std::vector<Complex> v;
  for (Eigen::Index i = 0; i < m.rows(); ++i) v.push_back(es.eigenvalues()(i));
  return v;
}

/// Ascending coefficients of det(t I - M), from the eigenvalues.
inline std::vector<Complex> char_poly_numeric(const CMatrix& m) {
  std::vector<Complex> neg;
  for (const auto& l : eigenvalues(m)) neg.push_back(-l);
  return expand_linear_factors(neg);
}

inline std::vector<double> singular_values(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

struct MonodromyOptions {
  Complex basepoint{0.5, 0.0};
  double tol = 1e-6;  // eigenvalue matching and reflection rank
  ContinuationOptions continuation{};
  double loop_radius = 0.0;     // 0 picks half the distance from the basepoint to {0, 1}
  double big_loop_radius = 2.0;
  bool frobenius_check = true;
  std::size_t frobenius_order = 120;
};

struct NumericMonodromy {
  std::size_t n = 0;
  CMatrix M0, M1, Minf;
  double loop_relation_residual = 0.0;  // |Minf M1 M0 - I|
  double big_loop_residual = 0.0;       // |Minf T - I|, T from one loop around both 0 and 1
  std::vector<EigenvalueMatch> eigenvalue_report;
  double max_cluster_error = 0.0;
  double max_pointwise_error = 0.0;
  std::vector<double> m1_singular_values;  // of M1 - I
  Complex exceptional_eigenvalue;          // det M1
  std::optional<double> frobenius_residual;  // |M0 - M0 from the Frobenius solution|
  std::size_t steps = 0;
  std::size_t max_order_used = 0;
  double continuation_error = 0.0;
};

inline double norm_2(const CMatrix& m) { return singular_values(m).front(); }

/// Monodromy of the hypergeometric equation with respect to `basepoint`,
/// with M = transport along the loop (fundamental matrix normalized to I at
/// the basepoint, continued solutions = old solutions times M).
inline NumericMonodromy numeric_monodromy(const std::vector<Complex>& alpha, const std::vector<Complex>& beta,
                                          const MonodromyOptions& opt = {}) {
  const auto eq = hypergeometric_system(alpha, beta);
  const auto sys = eq.first_order_system();
  const Complex b = opt.basepoint;
  if (b.imag() != 0.0 || !(b.real() > 0.0 && b.real() < 1.0))
    fail(ErrorKind::InvalidArgument, "basepoint must lie in the open interval (0, 1)");
  const double radius = opt.loop_radius > 0.0 ? opt.loop_radius : 0.5 * std::min(b.real(), 1.0 - b.real());
  if (radius >= std::min(b.real(), 1.0 - b.real()))
    fail(ErrorKind::InvalidArgument, "loop radius must be smaller than the basepoint's distance to 0 and 1");

  NumericMonodromy r;
  r.n = eq.n;
  const auto t0 = continue_along(sys, loop_around(0.0, b, radius), opt.continuation);
  const auto t1 = continue_along(sys, loop_around(1.0, b, radius), opt.continuation);
  // Leaves upward, so the loop is the one around 0 followed by the one around 1.
  const auto tb = continue_along(sys, loop_via(b, b, opt.big_loop_radius, kTwoPi / 4.0), opt.continuation);
  r.M0 = t0.transport;
  r.M1 = t1.transport;
  const auto ni = static_cast<Eigen::Index>(eq.n);
  const CMatrix id = CMatrix::Identity(ni, ni);
  r.Minf = (r.M1 * r.M0).inverse();
  r.loop_relation_residual = norm_2(r.Minf * r.M1 * r.M0 - id);
  r.big_loop_residual = norm_2(r.Minf * tb.transport - id);
  r.steps = t0.steps + t1.steps + tb.steps;
  r.max_order_used = std::max({t0.max_order_used, t1.max_order_used, tb.max_order_used});
  r.continuation_error = t0.estimated_error + t1.estimated_error + tb.estimated_error;

  std::vector<Complex> pred0, predinf;
  for (const auto& bj : beta) pred0.push_back(std::exp(Complex(0.0, kTwoPi) * (Complex(1.0) - bj)));
  for (const auto& aj : alpha) predinf.push_back(std::exp(Complex(0.0, kTwoPi) * aj));
  auto m0 = match_eigenvalues("M0", pred0, eigenvalues(r.M0));
  auto mi = match_eigenvalues("Minf", predinf, eigenvalues(r.Minf));
  r.eigenvalue_report = m0;
  r.eigenvalue_report.insert(r.eigenvalue_report.end(), mi.begin(), mi.end());
  for (const auto& e : r.eigenvalue_report) {
    r.max_cluster_error = std::max(r.max_cluster_error, e.cluster_error);
    r.max_pointwise_error = std::max(r.max_pointwise_error, e.error);
  }
  r.m1_singular_values = singular_values(r.M1 - id);
  r.exceptional_eigenvalue = r.M1.determinant();

  if (opt.frobenius_check) {
    FrobeniusOptions fo;
    fo.exponents = eq.indicial_roots();
    try {
      std::size_t extra = 0;
      for (const auto& x : *fo.exponents)
        for (const auto& y : *fo.exponents)
          extra = std::max<std::size_t>(extra, static_cast<std::size_t>(std::max(0.0, std::round(std::abs((x - y).real())))));
      const auto sol = frobenius_solve(eq.theta_series(opt.frobenius_order + eq.n * extra + 2), opt.frobenius_order, fo);
      r.frobenius_residual = norm_2(local_monodromy(sol, b) - r.M0);
    } catch (const Error&) {
      r.frobenius_residual.reset();
    }
  }

  if (r.max_cluster_error > opt.tol)
    fail(ErrorKind::EigenvalueMismatch, "numeric eigenvalues miss the predicted ones by " +
                                            std::to_string(r.max_cluster_error));
  return r;
}

struct CrossValidation {
  ParameterList alpha, beta;
  std::vector<double> numeric_beta;  // beta as fed to the equation
  bool beta_shifted = false;
  std::string note;
  double f_residual = 0.0;           // char poly of Minf vs f
  double g_residual = 0.0;           // char poly of M0^{-1} vs g
  double reflection_residual = 0.0;  // second singular value of M1 - I
  double worst = 0.0;
  bool passed = false;
  NumericMonodromy monodromy;
};

namespace detail {

inline double coefficient_residual(const std::vector<Complex>& num, const ExactPoly& exact) {
  double worst = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double e = i < exact.coefficients().size() ? to_double(exact.coefficients()[i]) : 0.0;
    worst = std::max(worst, std::abs(num[i] - Complex(e, 0.0)));
  }
  return worst;
}

}  // namespace detail

/// Compares the numeric monodromy with the exact pair f = prod (x - e(alpha)),
/// g = prod (x - e(beta)). `alpha_override`, when given, replaces the numeric
/// alpha (a negative control). Never throws on a mismatch; see cross_validate.
inline CrossValidation cross_validate_report(const ParameterList& alpha, const ParameterList& beta,
                                             const MonodromyOptions& opt = {},
                                             const std::optional<std::vector<Complex>>& alpha_override = std::nullopt) {
  if (alpha.size() != beta.size()) fail(ErrorKind::DegreeMismatch, "alpha and beta lists differ in length");
  const ExactPoly f = poly_from_parameters(alpha);
  const ExactPoly g = poly_from_parameters(beta);
  CrossValidation cv;
  cv.alpha = alpha;
  cv.beta = beta;
  for (const auto& bj : beta.angles()) {
    // beta = 0 gives the indicial root 1, which collides with the holomorphic
    // solution's exponent; beta = 1 has the same image on the circle.
    if (bj.numerator() == 0) {
      cv.numeric_beta.push_back(1.0);
      cv.beta_shifted = true;
    } else {
      cv.numeric_beta.push_back(bj.to_double());
    }
  }
  if (cv.beta_shifted) cv.note = "beta = 0 replaced by beta = 1 (same eigenvalue of M0)";
  const auto num_alpha = alpha_override ? *alpha_override : to_complex(alpha.to_doubles());
  MonodromyOptions o = opt;
  o.tol = std::numeric_limits<double>::infinity();  // mismatches are judged below
  cv.monodromy = numeric_monodromy(num_alpha, to_complex(cv.numeric_beta), o);
  cv.f_residual = detail::coefficient_residual(char_poly_numeric(cv.monodromy.Minf), f);
  cv.g_residual = detail::coefficient_residual(char_poly_numeric(cv.monodromy.M0.inverse()), g);
  const auto& sv = cv.monodromy.m1_singular_values;
  cv.reflection_residual = sv.size() > 1 ? sv[1] / std::max(1.0, norm_2(cv.monodromy.M1)) : 0.0;
  cv.worst = std::max({cv.f_residual, cv.g_residual, cv.reflection_residual});
  cv.passed = cv.worst <= opt.tol;
  return cv;
}

/// As cross_validate_report, but raises ValidationFailed with the worst residual.
inline CrossValidation cross_validate(const ParameterList& alpha, const ParameterList& beta,
                                      const MonodromyOptions& opt = {},
                                      const std::optional<std::vector<Complex>>& alpha_override = std::nullopt) {
  auto cv = cross_validate_report(alpha, beta, opt, alpha_override);
  if (!cv.passed) fail(ErrorKind::ValidationFailed, "worst residual " + std::to_string(cv.worst));
  return cv;
}

}  // namespace hypermono::odeflow
