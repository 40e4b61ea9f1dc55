#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hypermono/levelt.hpp"
#include "hypermono/matrix.hpp"

namespace hypermono {

namespace detail {

struct Overflow {};

/// int64 that throws Overflow instead of wrapping.
struct CheckedInt {
  std::int64_t v = 0;

  CheckedInt() = default;
  CheckedInt(std::int64_t x) : v(x) {}  // NOLINT: implicit by design of Matrix<T>

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
    return r;
  }
  CheckedInt& operator+=(CheckedInt b) { return *this = *this + b; }
  CheckedInt& operator-=(CheckedInt b) { return *this = *this - b; }
  CheckedInt& operator*=(CheckedInt b) { return *this = *this * b; }
  friend bool operator==(CheckedInt a, CheckedInt b) { return a.v == b.v; }
};

template <class T>
struct MatrixHash;

template <>
struct MatrixHash<CheckedInt> {
  std::size_t operator()(const Matrix<CheckedInt>& m) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& x : m.data()) h = (h ^ static_cast<std::size_t>(x.v)) * 0x100000001b3ULL;
    return h;
  }
};

/// Hashes the canonical row-major "p/q" serialization.
template <>
struct MatrixHash<Rational> {
  std::size_t operator()(const ExactMatrix& m) const {
    std::string s;
    for (const auto& x : m.data()) s += to_exact_string(x) + ",";
    return std::hash<std::string>{}(s);
  }
};

template <class T>
std::optional<std::size_t> bfs_closure(const std::vector<Matrix<T>>& gens, std::size_t cap) {
  const std::size_t n = gens.front().rows();
  std::unordered_set<Matrix<T>, MatrixHash<T>> seen;
  std::deque<Matrix<T>> queue;
  auto id = Matrix<T>::identity(n);
  seen.insert(id);
  queue.push_back(std::move(id));
  while (!queue.empty()) {
    const Matrix<T> x = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Matrix<T> y = x * g;
      if (seen.insert(y).second) {
        if (seen.size() > cap) return std::nullopt;
        queue.push_back(std::move(y));
      }
    }
  }
  return seen.size();
}

inline bool is_integral(const ExactMatrix& m) {
  for (const auto& x : m.data())
    if (!is_integer(x)) return false;
  return true;
}

inline Matrix<CheckedInt> to_checked(const ExactMatrix& m) {
  Matrix<CheckedInt> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (boost::multiprecision::abs(numerator(m(i, j))) > INT64_MAX / 2) throw Overflow{};
      out(i, j) = numerator(m(i, j)).convert_to<std::int64_t>();
    }
  return out;
}

}  // namespace detail

/// Outcome of brute-force closure; `order` is empty when the cap was exceeded.
struct ClosureResult {
  std::optional<std::size_t> order;
  std::size_t cap = 0;
  bool finite() const noexcept { return order.has_value(); }
};

/// Breadth-first closure of {A, A^-1, B, B^-1} under exact multiplication.
/// Integral groups run on overflow-checked 64-bit entries and fall back to
/// exact rationals if an entry ever overflows.
inline ClosureResult finite_closure(const HypergeometricGroup& h, std::size_t cap) {
  if (cap == 0) fail(ErrorKind::InvalidArgument, "closure cap must be positive");
  const std::vector<ExactMatrix> gens{h.A, inverse(h.A), h.B, inverse(h.B)};
  bool integral = true;
  for (const auto& g : gens) integral = integral && detail::is_integral(g);
  if (integral) {
    try {
      std::vector<Matrix<detail::CheckedInt>> ig;
      for (const auto& g : gens) ig.push_back(detail::to_checked(g));
      return {detail::bfs_closure(ig, cap), cap};
    } catch (const detail::Overflow&) {
    }
  }
  return {detail::bfs_closure(gens, cap), cap};
}

}  // namespace hypermono
