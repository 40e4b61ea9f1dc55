#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hypermono/error.hpp"
#include "hypermono/exactpoly.hpp"
#include "hypermono/matrix.hpp"
#include "hypermono/poly.hpp"

namespace hypermono {

/// Matrix of multiplication by x on Q[x]/(f) in the basis 1, x, ..., x^{n-1}:
/// ones on the subdiagonal, last column (-a_0, ..., -a_{n-1}).
inline ExactMatrix companion_matrix(const ExactPoly& f) {
  if (!f.is_monic()) fail(ErrorKind::NotMonic, "companion matrix needs a monic polynomial, got '" + to_string(f) + "'");
  if (f.degree() < 1) fail(ErrorKind::InvalidArgument, "companion matrix needs degree >= 1");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  ExactMatrix a(n, n);
  for (std::size_t i = 1; i < n; ++i) a(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -f[i];
  return a;
}

/// The hypergeometric group H(f, g): A, B companion matrices of f, g and the
/// reflection C = A^{-1} B. Monodromy dictionary: h_inf -> A, h_0 -> B^{-1},
/// h_1 -> C.
struct HypergeometricGroup {
  ExactPoly f;
  ExactPoly g;
  std::size_t n = 0;
  ExactMatrix A;
  ExactMatrix B;
  ExactMatrix C;
  Rational c;  // f(0) / g(0)
};

inline HypergeometricGroup build_group(const ExactPoly& f, const ExactPoly& g) {
  if (!f.is_monic() || !g.is_monic())
    fail(ErrorKind::NotMonic, "f and g must be monic");
  if (f.degree() != g.degree())
    fail(ErrorKind::DegreeMismatch, "deg f = " + std::to_string(f.degree()) + " but deg g = " + std::to_string(g.degree()));
  if (f == g) fail(ErrorKind::EqualPolynomials, "f = g gives C = I, which is not a reflection");
  if (f[0] == 0 || g[0] == 0)
    fail(ErrorKind::InvalidArgument, "f(0) and g(0) must be nonzero for A, B to be invertible");

  HypergeometricGroup h;
  h.f = f;
  h.g = g;
  h.n = static_cast<std::size_t>(f.degree());
  h.A = companion_matrix(f);
  h.B = companion_matrix(g);
  h.C = inverse(h.A) * h.B;
  h.c = f[0] / g[0];
  if (rank(h.C - ExactMatrix::identity(h.n)) != 1)
    fail(ErrorKind::InternalInconsistency, "C - I does not have rank 1");
  return h;
}

/// Irreducible when gcd(f, g) = 1; otherwise carries the gcd k that generates
/// the invariant ideal W = (k) of Q[t]/(f).
struct Irreducibility {
  std::optional<ExactPoly> common_factor;
  bool irreducible() const noexcept { return !common_factor.has_value(); }
};

inline Irreducibility irreducibility_check(const HypergeometricGroup& h) {
  ExactPoly k = poly_gcd(h.f, h.g);
  if (k.degree() == 0) return {};
  return {std::move(k)};
}

/// Columns span the ideal (k) inside Q[t]/(f), in the monomial basis.
inline ExactMatrix invariant_subspace(const HypergeometricGroup& h, const ExactPoly& k) {
  const std::size_t dim = h.n - static_cast<std::size_t>(k.degree());
  ExactMatrix w(h.n, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const ExactPoly v = divmod(k * ExactPoly::monomial(i), h.f).second;
    for (std::size_t r = 0; r < h.n; ++r) w(r, i) = v[r];
  }
  return w;
}

/// Matrices of A and B acting on the quotient V / (k) = Q[t]/(k), basis
/// 1, t, ..., t^{deg k - 1}. They agree whenever k = gcd(f, g).
inline std::pair<ExactMatrix, ExactMatrix> quotient_actions(const HypergeometricGroup& h, const ExactPoly& k) {
  if (!divides(k, h.f)) fail(ErrorKind::InvalidArgument, "k must divide f");
  const std::size_t d = static_cast<std::size_t>(k.degree());
  auto induced = [&](const ExactMatrix& op) {
    ExactMatrix q(d, d);
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> image = op.column(j);  // op applied to t^j
      const ExactPoly reduced = divmod(ExactPoly(image), k).second;
      for (std::size_t i = 0; i < d; ++i) q(i, j) = reduced[i];
    }
    return q;
  };
  return {induced(h.A), induced(h.B)};
}

struct NormalForm {
  ExactMatrix P;  // columns v, a v, ..., a^{n-1} v
  ExactMatrix A;  // P^{-1} a P, companion matrix of char(a)
  ExactMatrix B;  // P^{-1} b P, companion matrix of char(b)
};

/// Recovers the companion-matrix model from any pair (a, b) with coprime
/// characteristic polynomials and a^{-1} b a reflection.
inline NormalForm levelt_normal_form(const ExactMatrix& a, const ExactMatrix& b) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows() || a.rows() == 0)
    fail(ErrorKind::InvalidArgument, "a and b must be square of the same size");
  const std::size_t n = a.rows();
  if (determinant(a) == 0 || determinant(b) == 0)
    fail(ErrorKind::InvalidArgument, "a and b must be invertible");
  const ExactPoly fa = char_poly(a), fb = char_poly(b);
  if (resultant(fa, fb) == 0)
    fail(ErrorKind::SharedEigenvalue, "characteristic polynomials of a and b share a root");
  const ExactMatrix d = a - b;
  if (rank(d) != 1) fail(ErrorKind::NotReflection, "a - b must have rank exactly 1");

  // X = intersection of a^{-i} ker(a - b), i = 0..n-2, i.e. the kernel of
  // the stacked rows (a - b) a^i.
  std::vector<ExactMatrix> blocks;
  ExactMatrix ai = ExactMatrix::identity(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    blocks.push_back(d * ai);
    ai = ai * a;
  }
  std::vector<Rational> v;
  if (n == 1) {
    v = {Rational(1)};
  } else {
    const auto x = nullspace(vstack(blocks));
    if (x.empty()) fail(ErrorKind::InternalInconsistency, "intersection X is zero");
    v = x.front();
  }

  ExactMatrix p(n, n);
  std::vector<Rational> col = v;
  for (std::size_t j = 0; j < n; ++j) {
    p.set_column(j, col);
    col = a * col;
  }
  if (determinant(p) == 0) fail(ErrorKind::InternalInconsistency, "vector in X is not cyclic for a");
  const ExactMatrix pinv = inverse(p);
  NormalForm out{p, pinv * a * p, pinv * b * p};
  if (!(out.A == companion_matrix(fa)) || !(out.B == companion_matrix(fb)))
    fail(ErrorKind::InternalInconsistency, "conjugated pair is not in companion form");
  return out;
}

}  // namespace hypermono
