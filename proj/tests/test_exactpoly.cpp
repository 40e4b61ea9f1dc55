#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>

#include "hypermono/exactpoly.hpp"
#include "hypermono/matrix.hpp"
#include "hypermono/poly.hpp"
#include "hypermono/random.hpp"

using namespace hypermono;

namespace {

// prod over primitive m-th roots of unity of (x - zeta), rounded.
std::vector<long long> cyclotomic_by_roots(long long m) {
  const double pi = std::acos(-1.0);
  std::vector<std::complex<double>> c{1.0};
  for (long long k = 0; k < m; ++k) {
    if (std::gcd(k, m) != 1) continue;
    const auto z = std::polar(1.0, 2 * pi * static_cast<double>(k) / static_cast<double>(m));
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] -= z * c[i];
      next[i + 1] += c[i];
    }
    c = next;
  }
  std::vector<long long> out;
  for (const auto& x : c) out.push_back(std::llround(x.real()));
  return out;
}

ExactPoly from_ints(const std::vector<long long>& v) {
  std::vector<Rational> c;
  for (auto x : v) c.emplace_back(x);
  return ExactPoly(c);
}

// Leibniz expansion over all permutations.
Rational det_by_permutations(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, p[i]);
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

ExactMatrix random_matrix(std::size_t n, std::mt19937_64& rng, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> d(lo, hi);
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = Rational(d(rng), (d(rng) % 2 == 0) ? 1 : 2);
  return m;
}

}  // namespace

TEST_CASE("rational parsing and printing", "[exactpoly][rational]") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(to_exact_string(Rational(2)) == "2/1");
  CHECK(to_short_string(Rational(-3, 4)) == "-3/4");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("a/2"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("polynomial arithmetic", "[exactpoly][poly]") {
  const ExactPoly f{1, -4, 6, -4, 1};  // (x - 1)^4
  CHECK(f == power(ExactPoly{-1, 1}, 4));
  CHECK(f.degree() == 4);
  CHECK(f.is_monic());
  CHECK(to_string(f) == "x^4 - 4*x^3 + 6*x^2 - 4*x + 1");
  CHECK(ExactPoly().degree() == -1);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<long long> a(6), b(3);
    for (auto& x : a) x = d(rng);
    for (auto& x : b) x = d(rng);
    b.back() = d(rng) == 0 ? 1 : 3;
    const auto pa = from_ints(a), pb = from_ints(b);
    const auto [q, r] = divmod(pa, pb);
    CHECK(q * pb + r == pa);
    CHECK(r.degree() < pb.degree());
  }
  CHECK(poly_gcd(ExactPoly{-1, 0, 1}, ExactPoly{1, 2, 1}) == ExactPoly{1, 1});
}

TEST_CASE("resultant agrees with the product over roots", "[exactpoly][poly]") {
  // res(f, g) = prod over roots r of f of g(r) for monic f.
  const auto f = cyclotomic(5);
  const auto g = ExactPoly{2, 1, 1};
  std::complex<double> prod = 1.0;
  const double pi = std::acos(-1.0);
  for (int k = 1; k < 5; ++k) {
    const auto z = std::polar(1.0, 2 * pi * k / 5.0);
    prod *= 2.0 + z + z * z;
  }
  CHECK(to_double(resultant(f, g)) == Catch::Approx(prod.real()).margin(1e-9));
  CHECK(resultant(cyclotomic(4), ExactPoly{1, 0, 1}) == 0);
}

TEST_CASE("cyclotomic polynomials match the root products", "[exactpoly][cyclotomic]") {
  CHECK(cyclotomic(12) == ExactPoly{1, 0, -1, 0, 1});
  CHECK(cyclotomic(1) == ExactPoly{-1, 1});
  CHECK(cyclotomic(5) == ExactPoly{1, 1, 1, 1, 1});
  for (long long m = 1; m <= 40; ++m) {
    const auto phi = cyclotomic(m);
    CHECK(phi == from_ints(cyclotomic_by_roots(m)));
    CHECK(phi.degree() == euler_phi(m));
  }
  // x^m - 1 = prod_{d | m} Phi_d
  for (long long m = 1; m <= 24; ++m) {
    ExactPoly prod = ExactPoly::constant(1);
    for (long long d = 1; d <= m; ++d)
      if (m % d == 0) prod = prod * cyclotomic(d);
    CHECK(prod == ExactPoly::monomial(static_cast<std::size_t>(m)) - ExactPoly::constant(1));
  }
  CHECK_THROWS_AS(cyclotomic(0), Error);
}

TEST_CASE("cyclotomic factorization round-trips", "[exactpoly][cyclotomic]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const auto factors = random_cyclotomic_product(1 + trial % 8, rng);
    const auto f = poly_from_factors(factors);
    CHECK(cyclotomic_factors(f) == factors);
    CHECK(parse_poly(factors_to_spec(factors)) == f);
  }
  CHECK(factors_to_spec(cyclotomic_factors(ExactPoly{1, 2, 1} * cyclotomic(4))) == "C2^2*C4");
  try {
    cyclotomic_factors(ExactPoly{-2, 0, 1});
    FAIL("x^2 - 2 accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCyclotomicProduct);
  }
  CHECK_THROWS_AS(cyclotomic_factors(ExactPoly{1, 2}), Error);   // not monic
  CHECK_THROWS_AS(cyclotomic_factors(ExactPoly{2, 1, 1}), Error);  // |roots| != 1
}

TEST_CASE("parameter lists and polynomials", "[exactpoly][parameters]") {
  const auto dwork_beta = parse_angles("1/5,2/5,3/5,4/5");
  CHECK(poly_from_parameters(dwork_beta) == cyclotomic(5));
  CHECK(poly_from_parameters(parse_angles("0,0,0,0")) == power(cyclotomic(1), 4));
  CHECK(parameters_from_poly(cyclotomic(5)) == dwork_beta);
  CHECK(parse_angles("5/4, -1/4") == parse_angles("1/4,3/4"));
  CHECK(to_string(parse_angles("3/4,1/4,0")) == "0,1/4,3/4");

  try {
    poly_from_parameters(parse_angles("1/5,2/5"));
    FAIL("partial orbit accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotGaloisStable);
  }
  CHECK_THROWS_AS(poly_from_parameters(parse_angles("1/3,1/3,2/3")), Error);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = poly_from_factors(random_cyclotomic_product(1 + trial % 8, rng));
    CHECK(poly_from_parameters(parameters_from_poly(f)) == f);
  }
}

TEST_CASE("decimation", "[exactpoly][decimate]") {
  const ExactPoly f = cyclotomic(4);  // x^2 + 1
  REQUIRE(decimate_test(f, 2).has_value());
  CHECK(*decimate_test(f, 2) == ExactPoly{1, 1});
  CHECK_FALSE(decimate_test(cyclotomic(3), 2).has_value());
  CHECK(*decimate_test(cyclotomic(9), 3) == cyclotomic(3));
  CHECK_THROWS_AS(decimate_test(f, 1), Error);
}

TEST_CASE("polynomial grammar", "[exactpoly][grammar]") {
  CHECK(parse_poly("C1^4") == ExactPoly{1, -4, 6, -4, 1});
  CHECK(parse_poly("C2^2*C4") == ExactPoly{1, 2, 1} * ExactPoly{1, 0, 1});
  CHECK(parse_poly("[1, -4, 6, -4, 1]") == ExactPoly{1, -4, 6, -4, 1});
  for (const char* bad : {"", "C", "C0", "X5", "C2^", "C2^-1", "[1,2", "[]", "[1/2,1]", "C2**C3"}) {
    INFO(bad);
    try {
      parse_poly(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ParseError);
    }
  }
  CHECK_THROWS_AS(parse_angles("1/2,,1/3"), Error);
}

TEST_CASE("exact linear algebra agrees with independent oracles", "[exactpoly][matrix]") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    const auto m = random_matrix(n, rng);
    const Rational det = determinant(m);
    CHECK(det == det_by_permutations(m));
    CHECK((rank(m) == n) == (det != 0));
    if (det != 0) CHECK(m * inverse(m) == ExactMatrix::identity(n));

    // char poly vs det(x I - m) at several integer points.
    const auto cp = char_poly(m);
    CHECK(cp.degree() == static_cast<int>(n));
    for (int x = -3; x <= 3; ++x)
      CHECK(cp(Rational(x)) == det_by_permutations(Rational(x) * ExactMatrix::identity(n) - m));
  }
  // A singular matrix: kernel vectors are primitive integer vectors in the kernel.
  const auto s = ExactMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(s) == 2);
  const auto ker = nullspace(s);
  REQUIRE(ker.size() == 1);
  const auto img = s * ker.front();
  CHECK(std::all_of(img.begin(), img.end(), [](const Rational& q) { return q == 0; }));
  CHECK(std::all_of(ker.front().begin(), ker.front().end(), [](const Rational& q) { return is_integer(q); }));
  CHECK_THROWS_AS(inverse(s), Error);
}
