#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypermono/classify.hpp"
#include "hypermono/closure.hpp"
#include "hypermono/levelt.hpp"
#include "hypermono/odeflow/monodromy.hpp"

namespace hypermono {

using Json = nlohmann::json;

/// Rows of "p/q" strings.
inline Json to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_exact_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const ExactPoly& p) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(to_short_string(c));
  return {{"text", to_string(p)}, {"coefficients", coeffs}};
}

inline Json to_json(const odeflow::Complex& z) { return Json::array({z.real(), z.imag()}); }

/// Row-major list of [re, im] pairs, with the shape alongside.
inline Json to_json(const odeflow::CMatrix& m) {
  Json entries = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(to_json(m(i, j)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline Json angles_json(const ParameterList& p) {
  Json a = Json::array();
  for (const auto& x : p.angles()) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const ClassificationReport& r, bool with_generators = false) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["n"] = r.n;
  j["c"] = to_short_string(r.c);
  j["alpha"] = angles_json(r.alpha);
  j["beta"] = angles_json(r.beta);
  j["f"] = to_json(r.f);
  j["g"] = to_json(r.g);
  j["f_spec"] = factors_to_spec(cyclotomic_factors(r.f));
  j["g_spec"] = factors_to_spec(cyclotomic_factors(r.g));
  j["interlacing_pattern"] = r.interlace.pattern;
  j["omega"] = r.omega ? to_json(*r.omega) : Json(nullptr);
  j["arithmeticity"] = {{"status", std::string(to_string(r.arithmeticity))}, {"provenance", r.provenance}};
  Json w = Json::object();
  w["interlacing"] = r.interlace.interlacing;
  if (r.common_factor) w["common_factor"] = to_json(*r.common_factor);
  if (r.primitivity.k) {
    w["decimation_k"] = r.primitivity.k;
    w["f1"] = to_json(*r.primitivity.f1);
    w["g1"] = to_json(*r.primitivity.g1);
  }
  if (r.criterion) {
    w["difference"] = to_json(r.criterion->difference);
    w["leading_coefficient"] = to_short_string(r.criterion->leading);
  }
  j["witnesses"] = w;
  if (with_generators) {
    const auto h = build_group(r.f, r.g);
    j["generators"] = {{"A", to_json(h.A)}, {"B", to_json(h.B)}};
  }
  return j;
}

inline Json to_json(const NormalForm& nf) {
  return {{"P", to_json(nf.P)}, {"A", to_json(nf.A)}, {"B", to_json(nf.B)}};
}

inline Json to_json(const FamilyEntry& e) {
  return {{"g_spec", factors_to_spec(e.g_factors)},
          {"g", to_json(e.g)},
          {"g_at_1", to_short_string(e.g(Rational(1)))},
          {"status", std::string(to_string(e.status))},
          {"provenance", e.provenance}};
}

inline Json to_json(const FamilyCatalog& c) {
  Json records = Json::array();
  for (const auto& r : c.records)
    records.push_back({{"g", r.g_spec}, {"status", std::string(to_string(r.status))}, {"provenance", r.provenance}});
  return {{"version", c.version},
          {"reported_arithmetic", c.reported_arithmetic},
          {"reported_thin", c.reported_thin},
          {"records", records}};
}

inline FamilyCatalog catalog_from_json(const Json& j) {
  try {
    FamilyCatalog c;
    c.version = j.at("version").get<int>();
    if (c.version != 1) fail(ErrorKind::ParseError, "unsupported catalog version " + std::to_string(c.version));
    c.reported_arithmetic = j.value("reported_arithmetic", 7);
    c.reported_thin = j.value("reported_thin", 7);
    for (const auto& r : j.at("records")) {
      // Normalize the spec so "C5" and "C5^1" agree.
      const std::string spec = factors_to_spec(parse_factor_spec(r.at("g").get<std::string>()));
      c.records.push_back({spec, parse_family_status(r.at("status").get<std::string>()),
                           r.value("provenance", std::string())});
    }
    return c;
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, std::string("malformed catalog: ") + e.what());
  }
}

inline FamilyCatalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open catalog '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    fail(ErrorKind::ParseError, "catalog '" + path + "' is not valid JSON: " + e.what());
  }
  return catalog_from_json(j);
}

inline Json to_json(const odeflow::EigenvalueMatch& m) {
  return {{"matrix", m.matrix},
          {"predicted", to_json(m.predicted)},
          {"numeric", to_json(m.numeric)},
          {"error", m.error},
          {"cluster_error", m.cluster_error}};
}

inline Json to_json(const odeflow::NumericMonodromy& r) {
  Json table = Json::array();
  for (const auto& e : r.eigenvalue_report) table.push_back(to_json(e));
  return {{"n", r.n},
          {"M0", to_json(r.M0)},
          {"M1", to_json(r.M1)},
          {"Minf", to_json(r.Minf)},
          {"loop_relation_residual", r.loop_relation_residual},
          {"big_loop_residual", r.big_loop_residual},
          {"eigenvalues", table},
          {"max_cluster_error", r.max_cluster_error},
          {"max_pointwise_error", r.max_pointwise_error},
          {"m1_minus_identity_singular_values", r.m1_singular_values},
          {"exceptional_eigenvalue", to_json(r.exceptional_eigenvalue)},
          {"frobenius_m0_residual", r.frobenius_residual ? Json(*r.frobenius_residual) : Json(nullptr)},
          {"continuation", {{"steps", r.steps}, {"max_order_used", r.max_order_used}, {"estimated_error", r.continuation_error}}}};
}

inline Json to_json(const odeflow::CrossValidation& cv) {
  return {{"alpha", angles_json(cv.alpha)},
          {"beta", angles_json(cv.beta)},
          {"numeric_beta", cv.numeric_beta},
          {"beta_shifted", cv.beta_shifted},
          {"note", cv.note},
          {"f_residual", cv.f_residual},
          {"g_residual", cv.g_residual},
          {"reflection_residual", cv.reflection_residual},
          {"worst", cv.worst},
          {"passed", cv.passed}};
}

inline Json error_json(const Error& e) {
  return {{"error", {{"kind", std::string(e.name())}, {"message", std::string(e.what())}}}};
}

}  // namespace hypermono
