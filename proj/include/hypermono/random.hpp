#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hypermono/exactpoly.hpp"
#include "hypermono/matrix.hpp"

namespace hypermono {

/// Product of `steps` random integer row operations (and sign flips):
/// an element of GL_n(Z).
template <class Rng>
ExactMatrix random_unimodular(std::size_t n, Rng& rng, std::size_t steps = 12, int max_multiplier = 2) {
  ExactMatrix u = ExactMatrix::identity(n);
  if (n < 2) {
    if (std::bernoulli_distribution(0.5)(rng)) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-max_multiplier, max_multiplier);
  for (std::size_t s = 0; s < steps; ++s) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    while (j == i) j = pick(rng);
    const int m = mult(rng);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += Rational(m) * u(j, k);
    if (std::bernoulli_distribution(0.1)(rng))
      for (std::size_t k = 0; k < n; ++k) u(i, k) = -u(i, k);
  }
  return u;
}

/// Random multiset of Phi_m with total degree exactly `degree`.
template <class Rng>
CyclotomicFactors random_cyclotomic_product(std::int64_t degree, Rng& rng, bool allow_one = true) {
  std::vector<std::int64_t> indices;
  for (std::int64_t m = allow_one ? 1 : 2; m <= 2 * degree * degree + 2; ++m)
    if (euler_phi(m) <= degree) indices.push_back(m);
  CyclotomicFactors f;
  std::int64_t left = degree;
  while (left > 0) {
    std::vector<std::int64_t> fit;
    for (auto m : indices)
      if (euler_phi(m) <= left) fit.push_back(m);
    if (fit.empty()) break;
    const auto m = fit[std::uniform_int_distribution<std::size_t>(0, fit.size() - 1)(rng)];
    ++f[m];
    left -= euler_phi(m);
  }
  return f;
}

}  // namespace hypermono
