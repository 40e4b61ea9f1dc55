#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypermono/closure.hpp"
#include "hypermono/error.hpp"
#include "hypermono/exactpoly.hpp"
#include "hypermono/levelt.hpp"

namespace hypermono {

// ---------------------------------------------------------------------------
// Interlacing

struct InterlaceResult {
  bool interlacing = false;
  std::string pattern;  // labels in ascending angle order, e.g. "βαβα"
};

/// Sorts the 2n labelled angles (ties: alpha first) and tests strict circular
/// alternation. Any repeated value rules interlacing out.
inline InterlaceResult interlace_check(const ParameterList& alpha, const ParameterList& beta) {
  if (alpha.size() != beta.size() || alpha.size() == 0)
    fail(ErrorKind::DegreeMismatch, "alpha and beta must be nonempty and of equal length");
  std::vector<std::pair<RationalAngle, int>> all;  // label 0 = alpha, 1 = beta
  for (const auto& a : alpha.angles()) all.emplace_back(a, 0);
  for (const auto& b : beta.angles()) all.emplace_back(b, 1);
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    if (x.first < y.first) return true;
    if (y.first < x.first) return false;
    return x.second < y.second;
  });
  InterlaceResult r;
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    r.pattern += all[i].second == 0 ? "α" : "β";
    if (i > 0 && (all[i].first == all[i - 1].first || all[i].second == all[i - 1].second)) ok = false;
  }
  // 2n labels alternating linearly also alternate across the wrap-around.
  r.interlacing = ok;
  return r;
}

// ---------------------------------------------------------------------------
// Primitivity

struct Primitivity {
  std::size_t k = 0;  // 0 when primitive
  std::optional<ExactPoly> f1;
  std::optional<ExactPoly> g1;
  bool primitive() const noexcept { return k == 0; }
};

inline Primitivity primitivity_check(const ExactPoly& f, const ExactPoly& g) {
  if (f.degree() != g.degree()) fail(ErrorKind::DegreeMismatch, "f and g must have the same degree");
  const std::size_t n = static_cast<std::size_t>(std::max(f.degree(), 0));
  for (std::size_t k = 2; k <= n; ++k) {
    if (n % k) continue;
    auto f1 = decimate_test(f, k);
    if (!f1) continue;
    auto g1 = decimate_test(g, k);
    if (!g1) continue;
    return {k, std::move(f1), std::move(g1)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Invariant bilinear form

/// Solves A^T W A = W, B^T W B = W exactly. The solution space must be a line;
/// its generator is scaled to integer entries of content 1 with first nonzero
/// entry positive.
inline ExactMatrix invariant_form(const HypergeometricGroup& h) {
  if (!irreducibility_check(h).irreducible())
    fail(ErrorKind::InvalidArgument, "invariant form requires gcd(f, g) = 1");
  const std::size_t n = h.n;
  ExactMatrix sys(2 * n * n, n * n);
  auto add_equations = [&](const ExactMatrix& m, std::size_t row0) {
    // (M^T W M)_{kl} - W_{kl} = sum_{ij} M_{ik} M_{jl} W_{ij} - W_{kl}
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t row = row0 + k * n + l;
        for (std::size_t i = 0; i < n; ++i) {
          if (m(i, k) == 0) continue;
          for (std::size_t j = 0; j < n; ++j) sys(row, i * n + j) += m(i, k) * m(j, l);
        }
        sys(row, k * n + l) -= 1;
      }
  };
  add_equations(h.A, 0);
  add_equations(h.B, n * n);
  const auto basis = nullspace(sys);
  if (basis.empty()) fail(ErrorKind::NoInvariantForm, "no nonzero invariant bilinear form");
  if (basis.size() > 1)
    fail(ErrorKind::AmbiguousForm, "invariant forms span dimension " + std::to_string(basis.size()));
  ExactMatrix omega(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) omega(i, j) = basis.front()[i * n + j];

  if (!(h.A.transpose() * omega * h.A == omega) || !(h.B.transpose() * omega * h.B == omega))
    fail(ErrorKind::InternalInconsistency, "invariant form check failed");
  const ExactMatrix t = omega.transpose();
  if (h.c == 1 && !(t == Rational(-1) * omega))
    fail(ErrorKind::InternalInconsistency, "c = 1 but the invariant form is not skew-symmetric");
  if (h.c == -1 && !(t == omega))
    fail(ErrorKind::InternalInconsistency, "c = -1 but the invariant form is not symmetric");
  return omega;
}

// ---------------------------------------------------------------------------
// Arithmeticity criterion: leading coefficient of f - g bounded by 2 in
// absolute value implies finite index in Sp_Omega(Z).

struct CriterionResult {
  bool arithmetic = false;  // ArithmeticByCriterion vs Inconclusive
  Rational leading;         // c_d
  ExactPoly difference;     // f - g
};

inline CriterionResult arithmeticity_criterion(const ExactPoly& f, const ExactPoly& g) {
  ExactPoly diff = f - g;
  if (diff.is_zero()) fail(ErrorKind::ZeroDifference, "f - g is identically zero");
  const Rational lead = diff.leading();
  return {boost::multiprecision::abs(lead) <= 2, lead, std::move(diff)};
}

// ---------------------------------------------------------------------------
// Fourteen families: f = (X - 1)^4, g a degree-4 product of Phi_m with m >= 2.

enum class FamilyStatus { Arithmetic, Thin, Unknown };

constexpr std::string_view to_string(FamilyStatus s) {
  switch (s) {
    case FamilyStatus::Arithmetic: return "Arithmetic";
    case FamilyStatus::Thin: return "Thin";
    case FamilyStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

inline FamilyStatus parse_family_status(std::string_view s) {
  if (s == "Arithmetic") return FamilyStatus::Arithmetic;
  if (s == "Thin") return FamilyStatus::Thin;
  if (s == "Unknown") return FamilyStatus::Unknown;
  fail(ErrorKind::ParseError, "unknown family status '" + std::string(s) + "'");
}

struct FamilyEntry {
  CyclotomicFactors g_factors;
  ExactPoly g;
  FamilyStatus status = FamilyStatus::Unknown;
  std::string provenance;
};

/// Recorded literature statuses, keyed by the g factor spec.
struct FamilyCatalog {
  int version = 1;
  int reported_arithmetic = 7;
  int reported_thin = 7;
  struct Record {
    std::string g_spec;
    FamilyStatus status;
    std::string provenance;
  };
  std::vector<Record> records;
};

inline FamilyCatalog default_family_catalog() {
  FamilyCatalog c;
  c.records.push_back({"C5", FamilyStatus::Thin,
                       "Brav-Thomas: H((X-1)^4, (X^5-1)/(X-1)) has infinite index in Sp_Omega(Z)"});
  return c;
}

inline const FamilyCatalog::Record* find_record(const FamilyCatalog& catalog, const std::string& spec) {
  for (const auto& r : catalog.records)
    if (r.g_spec == spec) return &r;
  return nullptr;
}

namespace detail {

inline void enumerate_degree(std::int64_t remaining, std::int64_t min_m, CyclotomicFactors& cur,
                             std::vector<CyclotomicFactors>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  // phi(m) <= remaining forces m <= 2 remaining^2.
  for (std::int64_t m = min_m; m <= 2 * remaining * remaining + 2; ++m) {
    const std::int64_t d = euler_phi(m);
    if (d > remaining) continue;
    ++cur[m];
    enumerate_degree(remaining - d, m, cur, out);
    if (--cur[m] == 0) cur.erase(m);
  }
}

}  // namespace detail

/// All multisets of Phi_m (m >= 2) of total degree `degree`.
inline std::vector<CyclotomicFactors> cyclotomic_products_without_one(std::int64_t degree) {
  std::vector<CyclotomicFactors> out;
  CyclotomicFactors cur;
  detail::enumerate_degree(degree, 2, cur, out);
  return out;
}

inline std::vector<FamilyEntry> fourteen_families(const FamilyCatalog& catalog = default_family_catalog()) {
  const ExactPoly f = power(cyclotomic(1), 4);
  std::vector<FamilyEntry> entries;
  for (auto& factors : cyclotomic_products_without_one(4)) {
    FamilyEntry e;
    e.g = poly_from_factors(factors);
    e.g_factors = std::move(factors);
    const std::string spec = factors_to_spec(e.g_factors);
    const auto crit = arithmeticity_criterion(f, e.g);
    const auto* rec = find_record(catalog, spec);
    if (crit.arithmetic) {
      if (rec && rec->status == FamilyStatus::Thin)
        fail(ErrorKind::InternalInconsistency, "catalog marks " + spec + " thin but the criterion applies");
      e.status = FamilyStatus::Arithmetic;
      e.provenance = "leading coefficient of f - g is " + to_short_string(crit.leading) + ", |c_d| <= 2";
    } else if (rec && rec->status != FamilyStatus::Unknown) {
      e.status = rec->status;
      e.provenance = rec->provenance;
    } else {
      e.status = FamilyStatus::Unknown;
      e.provenance = rec && !rec->provenance.empty()
                         ? rec->provenance
                         : "not recorded; the literature reports " + std::to_string(catalog.reported_arithmetic) +
                               " arithmetic and " + std::to_string(catalog.reported_thin) +
                               " thin among the fourteen without this catalog listing members";
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

// ---------------------------------------------------------------------------
// Classification pipeline

enum class Verdict { Reducible, Finite, Imprimitive, Orthogonal, Symplectic };
enum class Arithmeticity { ArithmeticByCriterion, KnownThin, KnownArithmetic, Undetermined };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Reducible: return "Reducible";
    case Verdict::Finite: return "Finite";
    case Verdict::Imprimitive: return "Imprimitive";
    case Verdict::Orthogonal: return "Orthogonal";
    case Verdict::Symplectic: return "Symplectic";
  }
  return "Unknown";
}

constexpr std::string_view to_string(Arithmeticity a) {
  switch (a) {
    case Arithmeticity::ArithmeticByCriterion: return "ArithmeticByCriterion";
    case Arithmeticity::KnownThin: return "KnownThin";
    case Arithmeticity::KnownArithmetic: return "KnownArithmetic";
    case Arithmeticity::Undetermined: return "Undetermined";
  }
  return "Undetermined";
}

struct ClassificationReport {
  Verdict verdict = Verdict::Reducible;
  std::size_t n = 0;
  ParameterList alpha;
  ParameterList beta;
  ExactPoly f;
  ExactPoly g;
  Rational c;
  InterlaceResult interlace;
  std::optional<ExactPoly> common_factor;  // Reducible
  Primitivity primitivity;                  // Imprimitive witnesses
  std::optional<ExactMatrix> omega;         // Orthogonal / Symplectic
  std::optional<CriterionResult> criterion; // Symplectic
  Arithmeticity arithmeticity = Arithmeticity::Undetermined;
  std::string provenance;
};

inline ClassificationReport zariski_classification(const ExactPoly& f, const ExactPoly& g,
                                                   const FamilyCatalog& catalog = default_family_catalog()) {
  if (f.degree() != g.degree())
    fail(ErrorKind::DegreeMismatch, "deg f = " + std::to_string(f.degree()) + " but deg g = " + std::to_string(g.degree()));
  if (f == g) fail(ErrorKind::EqualPolynomials, "f = g gives C = I, which is not a reflection");
  ClassificationReport r;
  r.f = f;
  r.g = g;
  r.alpha = parameters_from_poly(f);
  r.beta = parameters_from_poly(g);
  r.n = r.alpha.size();
  r.c = f[0] / g[0];
  r.interlace = interlace_check(r.alpha, r.beta);

  const ExactPoly k = poly_gcd(f, g);
  if (k.degree() > 0) {
    r.verdict = Verdict::Reducible;
    r.common_factor = k;
    r.provenance = "not applicable: reducible monodromy";
    return r;
  }
  if (r.interlace.interlacing) {
    r.verdict = Verdict::Finite;
    r.provenance = "not applicable: finite monodromy (algebraic solutions)";
    return r;
  }
  r.primitivity = primitivity_check(f, g);
  if (!r.primitivity.primitive()) {
    r.verdict = Verdict::Imprimitive;
    r.provenance = "not applicable: imprimitive pair";
    return r;
  }

  const HypergeometricGroup h = build_group(f, g);
  r.omega = invariant_form(h);
  if (determinant(*r.omega) == 0)
    fail(ErrorKind::InternalInconsistency, "invariant form is degenerate in the primitive non-interlacing case");
  if (r.c == -1) {
    r.verdict = Verdict::Orthogonal;
    r.provenance = "no arithmeticity criterion is implemented for the orthogonal case";
    return r;
  }
  if (r.c != 1) fail(ErrorKind::InternalInconsistency, "c = f(0)/g(0) is not +-1");
  if (r.n % 2 != 0) fail(ErrorKind::InternalInconsistency, "c = 1 with odd n");
  r.verdict = Verdict::Symplectic;

  r.criterion = arithmeticity_criterion(f, g);
  if (r.criterion->arithmetic) {
    r.arithmeticity = Arithmeticity::ArithmeticByCriterion;
    r.provenance = "leading coefficient of f - g is " + to_short_string(r.criterion->leading) + ", |c_d| <= 2";
    return r;
  }
  if (f == power(cyclotomic(1), 4)) {
    const auto* rec = find_record(catalog, factors_to_spec(cyclotomic_factors(g)));
    if (rec && rec->status == FamilyStatus::Thin) {
      r.arithmeticity = Arithmeticity::KnownThin;
      r.provenance = rec->provenance;
      return r;
    }
    if (rec && rec->status == FamilyStatus::Arithmetic) {
      r.arithmeticity = Arithmeticity::KnownArithmetic;
      r.provenance = rec->provenance;
      return r;
    }
  }
  r.arithmeticity = Arithmeticity::Undetermined;
  r.provenance = "criterion inconclusive (c_d = " + to_short_string(r.criterion->leading) +
                 "); no catalog entry; thinness is not decidable in general";
  const std::size_t n = r.n;
  const ExactPoly repunit = divmod(ExactPoly::monomial(n + 1) - ExactPoly::constant(1), cyclotomic(1)).first;
  if (n >= 6 && f == power(cyclotomic(1), static_cast<unsigned>(n)) && g == repunit)
    r.provenance += "; finite index of this group in Sp_n(Z) is an open question";
  return r;
}

inline ClassificationReport zariski_classification(const ParameterList& alpha, const ParameterList& beta,
                                                   const FamilyCatalog& catalog = default_family_catalog()) {
  if (alpha.size() != beta.size())
    fail(ErrorKind::DegreeMismatch, "alpha and beta must have equal length");
  return zariski_classification(poly_from_parameters(alpha), poly_from_parameters(beta), catalog);
}

}  // namespace hypermono
