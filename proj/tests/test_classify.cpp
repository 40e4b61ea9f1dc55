#include <catch_amalgamated.hpp>

#include <fstream>
#include <random>

#include "hypermono/classify.hpp"
#include "hypermono/random.hpp"
#include "hypermono/serialize.hpp"

using namespace hypermono;

namespace {

bool preserves(const ExactMatrix& m, const ExactMatrix& omega) { return m.transpose() * omega * m == omega; }

}  // namespace

TEST_CASE("interlacing patterns", "[classify][interlace]") {
  const auto dwork = interlace_check(parse_angles("0,0,0,0"), parse_angles("1/5,2/5,3/5,4/5"));
  CHECK_FALSE(dwork.interlacing);
  CHECK(dwork.pattern == "ααααββββ");

  const auto good = interlace_check(parse_angles("1/3,2/3"), parse_angles("0,1/2"));
  CHECK(good.interlacing);
  CHECK(good.pattern == "βαβα");

  // Shared value: alpha sorts first, and equality rules interlacing out.
  const auto tie = interlace_check(parse_angles("1/2"), parse_angles("1/2"));
  CHECK_FALSE(tie.interlacing);
  CHECK(tie.pattern == "αβ");
  CHECK_THROWS_AS(interlace_check(parse_angles("0"), parse_angles("1/2,1/3")), Error);
}

TEST_CASE("interlacing agrees with a root-on-the-circle oracle", "[classify][interlace]") {
  // Oracle: walk the circle and count how many alpha's precede each beta.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::int64_t d = 1 + trial % 5;
    const auto f = poly_from_factors(random_cyclotomic_product(d, rng));
    const auto g = poly_from_factors(random_cyclotomic_product(d, rng));
    const auto a = parameters_from_poly(f), b = parameters_from_poly(g);
    bool oracle = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
      // Between consecutive betas (cyclically) there must be exactly one alpha.
      const auto lo = b[i].value();
      const auto hi = i + 1 < b.size() ? b[i + 1].value() : b[0].value() + 1;
      int count = 0;
      for (std::size_t j = 0; j < a.size(); ++j)
        for (int shift = 0; shift <= 1; ++shift) {
          const Rational x = a[j].value() + shift;
          if (x > lo && x < hi) ++count;
          if (x == lo || x == hi) count = 99;
        }
      if (count != 1) oracle = false;
    }
    INFO(to_string(a) << " | " << to_string(b));
    CHECK(interlace_check(a, b).interlacing == oracle);
  }
}

TEST_CASE("primitivity", "[classify][primitive]") {
  // f = Phi_4 = x^2 + 1 and g = Phi_1 Phi_2 = x^2 - 1 are both in x^2.
  const auto p = primitivity_check(cyclotomic(4), cyclotomic(1) * cyclotomic(2));
  CHECK(p.k == 2);
  CHECK(*p.f1 == ExactPoly{1, 1});
  CHECK(*p.g1 == ExactPoly{-1, 1});
  CHECK(primitivity_check(power(cyclotomic(1), 4), cyclotomic(5)).primitive());
  // Phi_9 = x^6 + x^3 + 1 and (x^3 - 1)^2 are both in x^3.
  CHECK(primitivity_check(cyclotomic(9), power(cyclotomic(1) * cyclotomic(3), 2)).k == 3);
  CHECK(primitivity_check(cyclotomic(9), power(cyclotomic(1), 4) * cyclotomic(3)).primitive());
}

TEST_CASE("invariant form of the Dwork group", "[classify][omega]") {
  const auto h = build_group(power(cyclotomic(1), 4), cyclotomic(5));
  const auto omega = invariant_form(h);
  CHECK(omega == ExactMatrix::from_rows({{0, 1, 1, -1}, {-1, 0, 1, 1}, {-1, -1, 0, 1}, {1, -1, -1, 0}}));
  CHECK(omega.transpose() == Rational(-1) * omega);
  CHECK(determinant(omega) != 0);
  CHECK(preserves(h.A, omega));
  CHECK(preserves(h.B, omega));
}

TEST_CASE("invariant forms over random primitive non-interlacing pairs", "[classify][omega]") {
  std::mt19937_64 rng(17);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 25; ++trial) {
    const std::int64_t d = 2 + trial % 5;
    const auto f = poly_from_factors(random_cyclotomic_product(d, rng));
    const auto g = poly_from_factors(random_cyclotomic_product(d, rng));
    if (f == g || poly_gcd(f, g).degree() > 0) continue;
    if (interlace_check(parameters_from_poly(f), parameters_from_poly(g)).interlacing) continue;
    if (!primitivity_check(f, g).primitive()) continue;
    const auto h = build_group(f, g);
    const auto omega = invariant_form(h);
    CHECK(preserves(h.A, omega));
    CHECK(preserves(h.B, omega));
    if (h.c == 1) CHECK(omega.transpose() == Rational(-1) * omega);
    if (h.c == -1) CHECK(omega.transpose() == omega);
    ++checked;
  }
  CHECK(checked >= 10);
}

TEST_CASE("arithmeticity criterion fixtures", "[classify][criterion]") {
  const auto r = arithmeticity_criterion(cyclotomic(5), power(cyclotomic(2), 2) * cyclotomic(4));
  CHECK(r.difference == ExactPoly{0, -1, -1, -1});
  CHECK(r.leading == -1);
  CHECK(r.arithmetic);

  const auto d = arithmeticity_criterion(power(cyclotomic(1), 4), cyclotomic(5));
  CHECK(d.leading == -5);
  CHECK_FALSE(d.arithmetic);
  try {
    arithmeticity_criterion(cyclotomic(5), cyclotomic(5));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroDifference);
  }
}

TEST_CASE("the fourteen families", "[classify][families]") {
  const auto fam = fourteen_families();
  REQUIRE(fam.size() == 14);
  std::set<std::string> specs;
  int thin = 0, arithmetic = 0;
  for (const auto& e : fam) {
    specs.insert(factors_to_spec(e.g_factors));
    CHECK(e.g.degree() == 4);
    CHECK(e.g(Rational(1)) != 0);
    CHECK(cyclotomic_factors(e.g) == e.g_factors);
    thin += e.status == FamilyStatus::Thin;
    arithmetic += e.status == FamilyStatus::Arithmetic;
  }
  CHECK(specs.size() == 14);
  const auto* c5 = &fam[0];
  for (const auto& e : fam)
    if (factors_to_spec(e.g_factors) == "C5") c5 = &e;
  CHECK(c5->status == FamilyStatus::Thin);
  CHECK(thin == 1);
  CHECK(arithmetic == 1);  // only C6^2 satisfies |c_d| <= 2

  // A catalog that contradicts the criterion is rejected.
  FamilyCatalog bad = default_family_catalog();
  bad.records.push_back({"C6^2", FamilyStatus::Thin, "wrong"});
  CHECK_THROWS_AS(fourteen_families(bad), Error);
}

TEST_CASE("shipped catalog matches the built-in one", "[classify][catalog]") {
  const auto loaded = load_catalog(std::string(HYPERMONO_DATA_DIR) + "/families.json");
  CHECK(to_json(loaded) == to_json(default_family_catalog()));
  CHECK_THROWS_AS(catalog_from_json(Json::parse(R"({"version": 2, "records": []})")), Error);
  CHECK_THROWS_AS(catalog_from_json(Json::parse(R"({"version": 1, "records": [{"g": "C5", "status": "Huge"}]})")), Error);
}

TEST_CASE("classification verdicts", "[classify][verdict]") {
  const auto dwork = zariski_classification(parse_angles("0,0,0,0"), parse_angles("1/5,2/5,3/5,4/5"));
  CHECK(dwork.verdict == Verdict::Symplectic);
  CHECK(dwork.n == 4);
  CHECK(dwork.c == 1);
  CHECK(dwork.arithmeticity == Arithmeticity::KnownThin);
  REQUIRE(dwork.omega);

  const auto red = zariski_classification(cyclotomic(1) * cyclotomic(3), cyclotomic(2) * cyclotomic(3));
  CHECK(red.verdict == Verdict::Reducible);
  CHECK(*red.common_factor == cyclotomic(3));

  const auto fin = zariski_classification(cyclotomic(3), cyclotomic(1) * cyclotomic(2));
  CHECK(fin.verdict == Verdict::Finite);
  CHECK(fin.arithmeticity == Arithmeticity::Undetermined);

  const auto imp = zariski_classification(cyclotomic(4) * cyclotomic(4), power(cyclotomic(1) * cyclotomic(2), 2));
  CHECK(imp.verdict == Verdict::Imprimitive);
  CHECK(imp.primitivity.k == 2);

  // c = f(0)/g(0) = -1: odd degree example.
  const auto orth = zariski_classification(power(cyclotomic(1), 3), power(cyclotomic(2), 3));
  CHECK(orth.c == -1);
  CHECK(orth.verdict == Verdict::Orthogonal);
  REQUIRE(orth.omega);
  CHECK(orth.omega->transpose() == *orth.omega);

  const auto by_crit = zariski_classification(power(cyclotomic(1), 4), power(cyclotomic(6), 2));
  CHECK(by_crit.verdict == Verdict::Symplectic);
  CHECK(by_crit.arithmeticity == Arithmeticity::ArithmeticByCriterion);

  const auto open = zariski_classification(power(cyclotomic(1), 6), cyclotomic(7));
  CHECK(open.verdict == Verdict::Symplectic);
  CHECK(open.arithmeticity == Arithmeticity::Undetermined);
  CHECK(open.provenance.find("open question") != std::string::npos);

  CHECK_THROWS_AS(zariski_classification(parse_angles("0,0"), parse_angles("1/3")), Error);
}
