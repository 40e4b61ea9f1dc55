#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "hypermono/error.hpp"

namespace hypermono {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

/// Canonical "p/q" form, denominator always present ("-4/1", "0/1").
inline std::string to_exact_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

/// Short form: "p" when integral, otherwise "p/q".
inline std::string to_short_string(const Rational& q) {
  if (is_integer(q)) return numerator(q).str();
  return to_exact_string(q);
}

inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s.push_back(ch);
  if (s.empty()) fail(ErrorKind::ParseError, "empty rational");
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto to_int = [](std::string t) {
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return Integer(t);
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int(s)) fail(ErrorKind::ParseError, "not a rational: '" + s + "'");
    return Rational(to_int(s));
  }
  std::string p = s.substr(0, slash), q = s.substr(slash + 1);
  if (!valid_int(p) || !valid_int(q) || q[0] == '-' || q[0] == '+')
    fail(ErrorKind::ParseError, "not a rational: '" + s + "'");
  Integer den = to_int(q);
  if (den == 0) fail(ErrorKind::ParseError, "zero denominator in '" + s + "'");
  return Rational(to_int(p), den);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace hypermono
