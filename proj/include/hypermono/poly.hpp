#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/matrix.hpp"
#include "hypermono/rational.hpp"

namespace hypermono {

/// Univariate polynomial over Q, dense ascending coefficients. The zero
/// polynomial has no coefficients and degree -1.
class ExactPoly {
 public:
  ExactPoly() = default;
  explicit ExactPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }
  ExactPoly(std::initializer_list<long long> ascending) {
    for (auto v : ascending) c_.emplace_back(v);
    trim();
  }

  static ExactPoly constant(const Rational& v) { return ExactPoly(std::vector<Rational>{v}); }
  static ExactPoly monomial(std::size_t degree, const Rational& coef = Rational(1)) {
    std::vector<Rational> c(degree + 1, Rational(0));
    c[degree] = coef;
    return ExactPoly(std::move(c));
  }

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }

  /// Coefficient of x^k (zero beyond the degree).
  Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool has_integer_coefficients() const {
    for (const auto& x : c_)
      if (!is_integer(x)) return false;
    return true;
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  ExactPoly monic() const {
    if (c_.empty()) return *this;
    std::vector<Rational> c = c_;
    const Rational lead = c.back();
    for (auto& x : c) x /= lead;
    return ExactPoly(std::move(c));
  }

  /// p(x^k).
  ExactPoly substitute_power(std::size_t k) const {
    if (c_.empty()) return *this;
    std::vector<Rational> c((c_.size() - 1) * k + 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) c[i * k] = c_[i];
    return ExactPoly(std::move(c));
  }

  friend bool operator==(const ExactPoly& a, const ExactPoly& b) { return a.c_ == b.c_; }

  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return ExactPoly(std::move(c));
  }

  friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return ExactPoly(std::move(c));
  }

  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return ExactPoly(std::move(c));
  }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
    if (b.is_zero()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
    if (a.degree() < b.degree()) return {ExactPoly{}, a};
    std::vector<Rational> r = a.c_;
    std::vector<Rational> q(a.c_.size() - b.c_.size() + 1, Rational(0));
    const Rational lead = b.c_.back();
    for (std::size_t k = q.size(); k-- > 0;) {
      const Rational t = r[k + b.c_.size() - 1] / lead;
      q[k] = t;
      if (t == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= t * b.c_[j];
    }
    r.resize(b.c_.size() - 1);
    return {ExactPoly(std::move(q)), ExactPoly(std::move(r))};
  }

  friend ExactPoly power(ExactPoly base, unsigned e) {
    ExactPoly r = ExactPoly::constant(1);
    while (e) {
      if (e & 1U) r = r * base;
      base = base * base;
      e >>= 1U;
    }
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline bool divides(const ExactPoly& d, const ExactPoly& p) { return divmod(p, d).second.is_zero(); }

/// Monic gcd over Q (Euclid). gcd(0, 0) is the zero polynomial.
inline ExactPoly poly_gcd(ExactPoly a, ExactPoly b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Human-readable form, highest degree first: "x^4 - 4*x^3 + 6*x^2 - 4*x + 1".
inline std::string to_string(const ExactPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    Rational c = p[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (k == 0) {
      s += to_short_string(c);
      continue;
    }
    if (c != 1) s += to_short_string(c) + "*";
    s += k == 1 ? std::string("x") : "x^" + std::to_string(k);
  }
  return s;
}

inline ExactPoly char_poly(const ExactMatrix& m) { return ExactPoly(char_poly_coefficients(m)); }

/// Sylvester-matrix resultant; zero iff the polynomials share a root.
inline Rational resultant(const ExactPoly& f, const ExactPoly& g) {
  if (f.is_zero() || g.is_zero()) return Rational(0);
  const int m = f.degree(), n = g.degree();
  if (m == 0) return power(ExactPoly::constant(f[0]), static_cast<unsigned>(n))[0];
  if (n == 0) return power(ExactPoly::constant(g[0]), static_cast<unsigned>(m))[0];
  const std::size_t N = static_cast<std::size_t>(m + n);
  ExactMatrix s(N, N);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) s(r, r + (m - k)) = f[k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) s(n + r, r + (n - k)) = g[k];
  return determinant(s);
}

}  // namespace hypermono
