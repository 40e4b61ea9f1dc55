#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/poly.hpp"
#include "hypermono/rational.hpp"

namespace hypermono {

/// A rational number reduced into [0, 1). Stored as a coprime pair with a
/// positive denominator.
class RationalAngle {
 public:
  RationalAngle() = default;
  RationalAngle(std::int64_t num, std::int64_t den) {
    if (den == 0) fail(ErrorKind::InvalidArgument, "angle with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    num %= den;
    if (num < 0) num += den;
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
  }

  static RationalAngle from_rational(const Rational& q) {
    return RationalAngle(hypermono::numerator(q).convert_to<std::int64_t>(),
                         hypermono::denominator(q).convert_to<std::int64_t>());
  }

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  Rational value() const { return Rational(num_, den_); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend bool operator==(const RationalAngle& a, const RationalAngle& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const RationalAngle& a, const RationalAngle& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::string to_string(const RationalAngle& a) {
  if (a.numerator() == 0) return "0";
  return std::to_string(a.numerator()) + "/" + std::to_string(a.denominator());
}

/// Sorted multiset of angles (the alpha's or beta's).
class ParameterList {
 public:
  ParameterList() = default;
  explicit ParameterList(std::vector<RationalAngle> angles) : angles_(std::move(angles)) {
    std::sort(angles_.begin(), angles_.end());
  }

  std::size_t size() const noexcept { return angles_.size(); }
  const std::vector<RationalAngle>& angles() const noexcept { return angles_; }
  const RationalAngle& operator[](std::size_t i) const { return angles_[i]; }

  std::vector<double> to_doubles() const {
    std::vector<double> v;
    for (const auto& a : angles_) v.push_back(a.to_double());
    return v;
  }

  friend bool operator==(const ParameterList&, const ParameterList&) = default;

 private:
  std::vector<RationalAngle> angles_;
};

inline std::string to_string(const ParameterList& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s;
}

inline std::int64_t euler_phi(std::int64_t m) {
  std::int64_t result = m;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

/// Phi_m, by exact division of x^m - 1 by Phi_d over the proper divisors d.
inline ExactPoly cyclotomic(std::int64_t m) {
  if (m < 1) fail(ErrorKind::InvalidArgument, "cyclotomic index must be >= 1");
  std::vector<std::int64_t> divs;
  for (std::int64_t d = 1; d <= m; ++d)
    if (m % d == 0) divs.push_back(d);
  std::map<std::int64_t, ExactPoly> phi;
  for (auto d : divs) {
    ExactPoly p = ExactPoly::monomial(static_cast<std::size_t>(d)) - ExactPoly::constant(1);
    for (const auto& [e, pe] : phi)
      if (d % e == 0) {
        auto [q, r] = divmod(p, pe);
        if (!r.is_zero()) fail(ErrorKind::InternalInconsistency, "inexact cyclotomic division");
        p = std::move(q);
      }
    phi.emplace(d, std::move(p));
  }
  return phi.at(m);
}

/// Multiset of cyclotomic indices m -> multiplicity.
using CyclotomicFactors = std::map<std::int64_t, int>;

inline ExactPoly poly_from_factors(const CyclotomicFactors& factors) {
  ExactPoly p = ExactPoly::constant(1);
  for (const auto& [m, e] : factors) p = p * power(cyclotomic(m), static_cast<unsigned>(e));
  return p;
}

/// Factors f into cyclotomic polynomials; throws NotCyclotomicProduct otherwise.
inline CyclotomicFactors cyclotomic_factors(const ExactPoly& f) {
  if (f.is_zero() || !f.is_monic() || !f.has_integer_coefficients())
    fail(ErrorKind::NotCyclotomicProduct, "'" + to_string(f) + "' is not a monic integer polynomial");
  CyclotomicFactors out;
  ExactPoly rest = f;
  const std::int64_t d = f.degree();
  // phi(m) >= sqrt(m/2), so no factor of degree <= d has index above 2 d^2.
  const std::int64_t bound = std::max<std::int64_t>(2, 2 * d * d);
  for (std::int64_t m = 1; m <= bound && rest.degree() > 0; ++m) {
    if (euler_phi(m) > rest.degree()) continue;
    const ExactPoly phi = cyclotomic(m);
    for (;;) {
      auto [q, r] = divmod(rest, phi);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++out[m];
    }
  }
  if (rest.degree() != 0)
    fail(ErrorKind::NotCyclotomicProduct, "'" + to_string(f) + "' has a non-cyclotomic factor");
  return out;
}

/// "C1^4", "C2^2*C4"; "1" for the empty product.
inline std::string factors_to_spec(const CyclotomicFactors& factors) {
  std::string s;
  for (const auto& [m, e] : factors) {
    if (!s.empty()) s += "*";
    s += "C" + std::to_string(m);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

inline ExactPoly poly_from_parameters(const ParameterList& p) {
  // Group numerators by denominator; each block must be a whole number of
  // full Galois orbits {k/m : gcd(k, m) = 1}.
  std::map<std::int64_t, std::map<std::int64_t, int>> by_den;
  for (const auto& a : p.angles()) ++by_den[a.denominator()][a.numerator()];
  CyclotomicFactors factors;
  for (const auto& [m, counts] : by_den) {
    const std::int64_t orbit = euler_phi(m);
    if (static_cast<std::int64_t>(counts.size()) != orbit)
      fail(ErrorKind::NotGaloisStable, "angles with denominator " + std::to_string(m) +
                                           " do not form full conjugacy orbits");
    const int mult = counts.begin()->second;
    for (const auto& [k, c] : counts)
      if (c != mult)
        fail(ErrorKind::NotGaloisStable, "angles with denominator " + std::to_string(m) +
                                             " have unequal multiplicities");
    factors[m] = mult;
  }
  return poly_from_factors(factors);
}

inline ParameterList parameters_from_poly(const ExactPoly& f) {
  std::vector<RationalAngle> angles;
  for (const auto& [m, e] : cyclotomic_factors(f))
    for (std::int64_t k = 0; k < m; ++k)
      if (std::gcd(k, m) == 1)
        for (int i = 0; i < e; ++i) angles.emplace_back(k, m);
  return ParameterList(std::move(angles));
}

/// f1 with f(x) = f1(x^k), when every exponent present is divisible by k.
inline std::optional<ExactPoly> decimate_test(const ExactPoly& f, std::size_t k) {
  if (k < 2) fail(ErrorKind::InvalidArgument, "decimation factor must be >= 2");
  if (f.is_zero()) fail(ErrorKind::InvalidArgument, "decimation of the zero polynomial");
  const auto& c = f.coefficients();
  std::vector<Rational> out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i % k == 0) out.push_back(c[i]);
    else if (c[i] != 0) return std::nullopt;
  }
  return ExactPoly(std::move(out));
}

// ---------------------------------------------------------------------------
// Text grammar.
//   angles:     "0,0,0,0"  "1/5,2/5,3/5,4/5"
//   polynomial: "C1^4"  "C5"  "C2^2*C4"  or ascending integers "[1,-4,6,-4,1]"

namespace detail {

inline std::string strip(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r') out.push_back(ch);
  return out;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

inline std::int64_t parse_positive(const std::string& s, std::string_view what) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(ErrorKind::ParseError, "bad " + std::string(what) + ": '" + s + "'");
  const std::int64_t v = std::stoll(s);
  if (v < 1) fail(ErrorKind::ParseError, std::string(what) + " must be positive");
  return v;
}

}  // namespace detail

inline ParameterList parse_angles(std::string_view text) {
  const std::string s = detail::strip(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty angle list");
  std::vector<RationalAngle> angles;
  for (const auto& part : detail::split(s, ',')) {
    const Rational q = parse_rational(part);
    if (denominator(q) > 1'000'000'000 || boost::multiprecision::abs(numerator(q)) > 1'000'000'000'000LL)
      fail(ErrorKind::ParseError, "angle '" + part + "' out of range");
    angles.push_back(RationalAngle::from_rational(q));
  }
  return ParameterList(std::move(angles));
}

inline CyclotomicFactors parse_factor_spec(std::string_view text) {
  const std::string s = detail::strip(text);
  if (s.empty()) fail(ErrorKind::ParseError, "empty polynomial spec");
  CyclotomicFactors factors;
  for (const auto& term : detail::split(s, '*')) {
    if (term.size() < 2 || term[0] != 'C')
      fail(ErrorKind::ParseError, "expected C<m>[^e], got '" + term + "'");
    const auto caret = term.find('^');
    const std::int64_t m = detail::parse_positive(term.substr(1, caret == std::string::npos ? std::string::npos : caret - 1),
                                                  "cyclotomic index");
    const std::int64_t e =
        caret == std::string::npos ? 1 : detail::parse_positive(term.substr(caret + 1), "exponent");
    if (m > 10000 || e > 1000) fail(ErrorKind::ParseError, "factor '" + term + "' too large");
    factors[m] += static_cast<int>(e);
  }
  return factors;
}

inline ExactPoly parse_poly(std::string_view text) {
  const std::string s = detail::strip(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') fail(ErrorKind::ParseError, "unterminated coefficient list");
    const std::string body = s.substr(1, s.size() - 2);
    if (body.empty()) fail(ErrorKind::ParseError, "empty coefficient list");
    std::vector<Rational> c;
    for (const auto& part : detail::split(body, ',')) {
      const Rational q = parse_rational(part);
      if (!is_integer(q)) fail(ErrorKind::ParseError, "coefficients must be integers: '" + part + "'");
      c.push_back(q);
    }
    return ExactPoly(std::move(c));
  }
  return poly_from_factors(parse_factor_spec(s));
}

}  // namespace hypermono
