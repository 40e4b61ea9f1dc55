#include <catch_amalgamated.hpp>

#include <random>
#include <set>

#include "hypermono/closure.hpp"
#include "hypermono/levelt.hpp"
#include "hypermono/random.hpp"

using namespace hypermono;

namespace {

// Independent closure: ordered set of serialized matrices, products by
// plain long long arithmetic.
using IMat = std::vector<long long>;

IMat to_imat(const ExactMatrix& m) {
  IMat out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.push_back(numerator(m(i, j)).convert_to<long long>());
  return out;
}

IMat mul(const IMat& a, const IMat& b, std::size_t n) {
  IMat c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
  return c;
}

std::size_t closure_by_set(const ExactMatrix& a, const ExactMatrix& b) {
  const std::size_t n = a.rows();
  const std::vector<IMat> gens{to_imat(a), to_imat(b)};  // finite group: inverses are powers
  std::set<IMat> seen{to_imat(ExactMatrix::identity(n))};
  std::vector<IMat> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<IMat> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = mul(x, g, n);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

std::pair<ExactPoly, ExactPoly> random_coprime_pair(std::int64_t degree, std::mt19937_64& rng) {
  for (;;) {
    const auto f = poly_from_factors(random_cyclotomic_product(degree, rng));
    const auto g = poly_from_factors(random_cyclotomic_product(degree, rng));
    if (f != g && poly_gcd(f, g).degree() == 0) return {f, g};
  }
}

}  // namespace

TEST_CASE("companion matrix has the right characteristic polynomial", "[levelt][companion]") {
  const ExactPoly f{1, -4, 6, -4, 1};
  const auto a = companion_matrix(f);
  CHECK(char_poly(a) == f);
  CHECK(a(1, 0) == 1);
  CHECK(a(3, 3) == 4);  // -a_3
  CHECK_THROWS_AS(companion_matrix(ExactPoly{1, 2}), Error);
}

TEST_CASE("hypergeometric group construction", "[levelt][group]") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const auto [f, g] = random_coprime_pair(1 + trial % 8, rng);
    const auto h = build_group(f, g);
    CHECK(char_poly(h.A) == f);
    CHECK(char_poly(h.B) == g);
    CHECK(rank(h.C - ExactMatrix::identity(h.n)) == 1);
    CHECK(h.c == f[0] / g[0]);
    CHECK(h.C == inverse(h.A) * h.B);
  }
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalInconsistency;
  };
  CHECK(kind_of([] { build_group(ExactPoly{1, 2}, ExactPoly{1, 1}); }) == ErrorKind::NotMonic);
  CHECK(kind_of([] { build_group(cyclotomic(5), cyclotomic(3)); }) == ErrorKind::DegreeMismatch);
  CHECK(kind_of([] { build_group(cyclotomic(5), cyclotomic(5)); }) == ErrorKind::EqualPolynomials);
  CHECK(kind_of([] { build_group(ExactPoly{0, 1}, ExactPoly{1, 1}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("irreducibility and the induced quotient", "[levelt][irreducible]") {
  const ExactPoly f = cyclotomic(1) * cyclotomic(3);
  const ExactPoly g = cyclotomic(2) * cyclotomic(3);
  const auto h = build_group(f, g);
  const auto irr = irreducibility_check(h);
  REQUIRE_FALSE(irr.irreducible());
  CHECK(*irr.common_factor == cyclotomic(3));
  const auto w = invariant_subspace(h, cyclotomic(3));
  CHECK(rank(w) == 1);
  const auto [qa, qb] = quotient_actions(h, cyclotomic(3));
  CHECK(char_poly(qa) == cyclotomic(3));
  CHECK(char_poly(qb) == cyclotomic(3));
  CHECK(irreducibility_check(build_group(cyclotomic(5), power(cyclotomic(1), 4))).irreducible());
}

TEST_CASE("normal form recovers conjugated companion pairs", "[levelt][normal]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const auto [f, g] = random_coprime_pair(1 + trial % 6, rng);
    const auto h = build_group(f, g);
    const auto u = random_unimodular(h.n, rng);
    CHECK(rank(u) == h.n);
    CHECK((determinant(u) == 1 || determinant(u) == -1));
    const auto ui = inverse(u);
    const auto nf = levelt_normal_form(ui * h.A * u, ui * h.B * u);
    CHECK(nf.A == h.A);
    CHECK(nf.B == h.B);
    CHECK(inverse(nf.P) * (ui * h.A * u) * nf.P == h.A);
  }
  // The companion pair itself is already normal.
  const auto h = build_group(power(cyclotomic(1), 4), cyclotomic(5));
  CHECK(levelt_normal_form(h.A, h.B).P == ExactMatrix::identity(4));
}

TEST_CASE("normal form rejects invalid pairs", "[levelt][normal]") {
  // Companion matrices of C1*C3 and C2*C3 differ in one column but share Phi_3.
  const auto a = companion_matrix(cyclotomic(1) * cyclotomic(3));
  const auto b = companion_matrix(cyclotomic(2) * cyclotomic(3));
  try {
    levelt_normal_form(a, b);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SharedEigenvalue);
  }
  const auto rot = ExactMatrix::from_rows({{0, -1}, {1, 0}});
  const auto diag = ExactMatrix::from_rows({{2, 0}, {0, 3}});
  try {
    levelt_normal_form(rot, diag);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotReflection);
  }
  CHECK_THROWS_AS(levelt_normal_form(rot, ExactMatrix::identity(3)), Error);
}

TEST_CASE("finite closure matches an independent enumeration", "[levelt][closure]") {
  const auto h = build_group(cyclotomic(4), cyclotomic(1) * cyclotomic(2));
  const auto r = finite_closure(h, 100000);
  REQUIRE(r.finite());
  CHECK(*r.order == 8);
  CHECK(closure_by_set(h.A, h.B) == 8);

  // Interlacing pairs of small degree: finite groups, orders agree.
  const std::vector<std::pair<ExactPoly, ExactPoly>> pairs{
      {cyclotomic(2), cyclotomic(1)},
      {cyclotomic(3), cyclotomic(1) * cyclotomic(2)},
      {cyclotomic(6), cyclotomic(1) * cyclotomic(2)},
      {cyclotomic(2) * cyclotomic(4), cyclotomic(1) * cyclotomic(3)},
      {cyclotomic(8), cyclotomic(1) * cyclotomic(2) * cyclotomic(4)},
  };
  for (const auto& [f, g] : pairs) {
    const auto hg = build_group(f, g);
    const auto cr = finite_closure(hg, 100000);
    REQUIRE(cr.finite());
    CHECK(*cr.order == closure_by_set(hg.A, hg.B));
  }

  // Dwork: infinite, so the cap is hit.
  const auto dwork = build_group(power(cyclotomic(1), 4), cyclotomic(5));
  CHECK_FALSE(finite_closure(dwork, 2000).finite());
  CHECK_THROWS_AS(finite_closure(dwork, 0), Error);
}
