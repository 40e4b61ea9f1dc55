#pragma once

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hypermono/hypermono.hpp"
#include "hypermono/random.hpp"
#include "hypermono/serialize.hpp"

namespace hypermono::cli {

inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

inline const char* kGrammar =
    "inputs:\n"
    "  angles       --alpha 0,0,0,0 --beta 1/5,2/5,3/5,4/5   (rationals, taken mod 1 on the exact side)\n"
    "  polynomials  --f C1^4 --g C5   or   --f C2^2*C4   or ascending integers --f [1,-4,6,-4,1]\n"
    "  matrices     --a [[0,-1],[1,0]]   (rows of integers or p/q strings)\n"
    "  path         --path 0.25:0;0:0.25;-0.25:0   (re:im points after the basepoint)\n"
    "exit codes: 0 success, 1 domain error, 2 usage error\n";

struct Options {
  std::string output = "json";
  std::string catalog_path;
  double tol = 1e-6;
  std::size_t max_order = 256;
  double basepoint = 0.5;
};

/// Series cap: explicit flag, else HYPERMONO_MAX_ORDER, else 256.
inline std::size_t default_max_order() {
  if (const char* env = std::getenv("HYPERMONO_MAX_ORDER")) {
    try {
      const long v = std::stol(env);
      if (v >= 8 && v <= 100000) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 256;
}

namespace detail {

struct PairInput {
  std::string alpha, beta, f, g;
};

inline void add_pair_options(CLI::App* sub, PairInput& in) {
  sub->add_option("--alpha", in.alpha, "alpha angles");
  sub->add_option("--beta", in.beta, "beta angles");
  sub->add_option("--f", in.f, "polynomial f");
  sub->add_option("--g", in.g, "polynomial g");
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exactly one of (alpha, beta) and (f, g).
inline std::pair<ExactPoly, ExactPoly> resolve_pair(const PairInput& in) {
  const bool angles = !in.alpha.empty() || !in.beta.empty();
  const bool polys = !in.f.empty() || !in.g.empty();
  if (angles == polys) throw UsageError("give exactly one of --alpha/--beta or --f/--g");
  if (angles) {
    if (in.alpha.empty() || in.beta.empty()) throw UsageError("--alpha and --beta go together");
    const auto a = parse_angles(in.alpha);
    const auto b = parse_angles(in.beta);
    if (a.size() != b.size()) fail(ErrorKind::DegreeMismatch, "alpha and beta must have equal length");
    return {poly_from_parameters(a), poly_from_parameters(b)};
  }
  if (in.f.empty() || in.g.empty()) throw UsageError("--f and --g go together");
  return {parse_poly(in.f), parse_poly(in.g)};
}

/// Raw numeric parameters (not reduced mod 1).
inline std::vector<odeflow::Complex> parse_numeric_list(const std::string& text) {
  std::vector<odeflow::Complex> out;
  for (const auto& part : hypermono::detail::split(hypermono::detail::strip(text), ',')) {
    if (part.find('.') != std::string::npos || part.find('e') != std::string::npos) {
      try {
        std::size_t used = 0;
        const double v = std::stod(part, &used);
        if (used != part.size()) throw std::invalid_argument(part);
        out.emplace_back(v, 0.0);
      } catch (const std::exception&) {
        fail(ErrorKind::ParseError, "not a number: '" + part + "'");
      }
    } else {
      out.emplace_back(to_double(parse_rational(part)), 0.0);
    }
  }
  return out;
}

inline odeflow::Complex parse_point(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    fail(ErrorKind::ParseError, "bad point '" + s + "', expected re:im");
  }
}

inline ExactMatrix parse_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::exception&) {
    fail(ErrorKind::ParseError, "matrix is not a JSON array of rows");
  }
  if (!j.is_array() || j.empty()) fail(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  const std::size_t n = j.size();
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) fail(ErrorKind::ParseError, "matrix must be square");
    for (std::size_t k = 0; k < n; ++k) {
      const auto& e = j[i][k];
      if (e.is_number_integer()) m(i, k) = Rational(e.get<long long>());
      else if (e.is_string()) m(i, k) = parse_rational(e.get<std::string>());
      else fail(ErrorKind::ParseError, "matrix entries must be integers or p/q strings");
    }
  }
  return m;
}

inline std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << std::scientific << v;
  return s.str();
}

inline std::string fmt(odeflow::Complex z) {
  std::ostringstream s;
  s << std::setprecision(10) << std::fixed << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

inline std::string text_matrix(const ExactMatrix& m) {
  std::string s;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += "  [";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + to_short_string(m(i, j));
    s += "]\n";
  }
  return s;
}

inline std::string text_matrix(const odeflow::CMatrix& m) {
  std::string s;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    s += "  [";
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + fmt(m(i, j));
    s += "]\n";
  }
  return s;
}

struct Outcome {
  Json json;
  std::string text;
};

}  // namespace detail

/// Runs one request (argv without the program name). Writes the report to
/// `out`, diagnostics to `err`, and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool nested = false) {
  using detail::Outcome;
  CLI::App app{"Hypergeometric monodromy: exact classification and numeric continuation", "hypermono"};
  app.footer(kGrammar);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Options opt;
  opt.max_order = default_max_order();
  app.add_option("--output", opt.output, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--catalog", opt.catalog_path, "family status catalog (JSON)");
  app.add_option("--tol", opt.tol, "numeric matching tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-order", opt.max_order, "series truncation cap")->check(CLI::Range(8, 100000));
  app.add_option("--basepoint", opt.basepoint, "real basepoint in (0, 1)");

  detail::PairInput pair;
  bool generators = false;
  auto* classify = app.add_subcommand("classify", "Zariski closure and arithmeticity verdict");
  detail::add_pair_options(classify, pair);
  classify->add_flag("--generators", generators, "include the companion generators");

  std::string mat_a, mat_b;
  std::optional<std::uint64_t> conj_seed;
  auto* normal = app.add_subcommand("normal-form", "Levelt normal form of a pair of matrices");
  detail::add_pair_options(normal, pair);
  normal->add_option("--a", mat_a, "matrix a");
  normal->add_option("--b", mat_b, "matrix b");
  normal->add_option("--conjugate-seed", conj_seed, "conjugate the companion pair by a random unimodular matrix first");

  std::string num_alpha, num_beta;
  bool validate = false;
  auto* mono = app.add_subcommand("monodromy", "numeric monodromy by analytic continuation");
  mono->add_option("--alpha", num_alpha, "alpha parameters")->required();
  mono->add_option("--beta", num_beta, "beta parameters")->required();
  mono->add_flag("--validate", validate, "cross-validate against the exact companion pair");

  auto* inter = app.add_subcommand("interlace", "interlacing test");
  detail::add_pair_options(inter, pair);

  app.add_subcommand("families", "the fourteen symplectic families with f = (x-1)^4");

  std::size_t cap = 100000;
  auto* closure = app.add_subcommand("closure", "enumerate the group generated by the companion matrices");
  detail::add_pair_options(closure, pair);
  closure->add_option("--cap", cap, "maximum group order explored")->check(CLI::Range(1, 10000000));

  std::string path_text;
  bool path_closed = false;
  auto* cont = app.add_subcommand("continue", "transport matrix along a path");
  cont->add_option("--alpha", num_alpha, "alpha parameters")->required();
  cont->add_option("--beta", num_beta, "beta parameters")->required();
  cont->add_option("--path", path_text, "waypoints re:im separated by ';'")->required();
  cont->add_flag("--closed", path_closed, "return to the basepoint");

  std::string batch_file;
  auto* batch = app.add_subcommand("batch", "run newline-delimited requests from a file");
  batch->add_option("file", batch_file, "request file")->required();

  auto usage = [&](const std::string& msg) {
    err << "usage error: " << msg << "\n\n" << app.help();
    return kUsageError;
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  const bool json = opt.output == "json";
  auto emit_error = [&](const Error& e) {
    if (json) out << error_json(e).dump(2) << "\n";
    else err << e.name() << ": " << e.what() << "\n";
    return kDomainError;
  };

  Outcome o;
  try {
    const FamilyCatalog catalog = opt.catalog_path.empty() ? default_family_catalog() : load_catalog(opt.catalog_path);
    odeflow::MonodromyOptions mopt;
    mopt.basepoint = opt.basepoint;
    mopt.tol = opt.tol;
    mopt.continuation.tol = std::max(opt.tol * 1e-4, 1e-13);
    mopt.continuation.max_order = opt.max_order;

    if (*classify) {
      const auto [f, g] = detail::resolve_pair(pair);
      const auto r = zariski_classification(f, g, catalog);
      o.json = to_json(r, generators);
      o.text = "verdict: " + std::string(to_string(r.verdict)) + "\nn: " + std::to_string(r.n) +
               "\nc: " + to_short_string(r.c) + "\nf: " + to_string(r.f) + "\ng: " + to_string(r.g) +
               "\ninterlacing: " + r.interlace.pattern + "\narithmeticity: " + std::string(to_string(r.arithmeticity)) +
               " (" + r.provenance + ")\n";
      if (r.omega) o.text += "omega:\n" + detail::text_matrix(*r.omega);
    } else if (*normal) {
      ExactMatrix a, b;
      if (!mat_a.empty() || !mat_b.empty()) {
        if (mat_a.empty() || mat_b.empty()) throw detail::UsageError("--a and --b go together");
        if (!pair.alpha.empty() || !pair.beta.empty() || !pair.f.empty() || !pair.g.empty())
          throw detail::UsageError("give either matrices or a polynomial pair");
        a = detail::parse_matrix(mat_a);
        b = detail::parse_matrix(mat_b);
      } else {
        const auto [f, g] = detail::resolve_pair(pair);
        const auto h = build_group(f, g);
        a = h.A;
        b = h.B;
        if (conj_seed) {
          std::mt19937_64 rng(*conj_seed);
          const ExactMatrix u = random_unimodular(h.n, rng);
          const ExactMatrix ui = inverse(u);
          a = ui * a * u;
          b = ui * b * u;
        }
      }
      const auto nf = levelt_normal_form(a, b);
      o.json = to_json(nf);
      o.json["input"] = {{"a", to_json(a)}, {"b", to_json(b)}};
      o.text = "P:\n" + detail::text_matrix(nf.P) + "A:\n" + detail::text_matrix(nf.A) + "B:\n" + detail::text_matrix(nf.B);
    } else if (*mono) {
      const auto alpha = detail::parse_numeric_list(num_alpha);
      const auto beta = detail::parse_numeric_list(num_beta);
      if (validate) {
        const auto cv = odeflow::cross_validate(parse_angles(num_alpha), parse_angles(num_beta), mopt);
        o.json = to_json(cv.monodromy);
        o.json["validation"] = to_json(cv);
        o.text = "validation passed, worst residual " + detail::fmt(cv.worst) + (cv.note.empty() ? "" : " (" + cv.note + ")") + "\n";
      } else {
        const auto r = odeflow::numeric_monodromy(alpha, beta, mopt);
        o.json = to_json(r);
      }
      o.text += "see --output json for the matrices; eigenvalue table:\n";
      for (const auto& e : o.json["eigenvalues"])
        o.text += "  " + e["matrix"].get<std::string>() + " predicted " +
                  detail::fmt(odeflow::Complex(e["predicted"][0].get<double>(), e["predicted"][1].get<double>())) +
                  " error " + detail::fmt(e["error"].get<double>()) + "\n";
      o.text += "loop relation residual " + detail::fmt(o.json["loop_relation_residual"].get<double>()) + "\n";
    } else if (*inter) {
      const auto [f, g] = detail::resolve_pair(pair);
      const auto a = parameters_from_poly(f);
      const auto b = parameters_from_poly(g);
      const auto r = interlace_check(a, b);
      o.json = {{"interlacing", r.interlacing}, {"pattern", r.pattern}, {"alpha", angles_json(a)}, {"beta", angles_json(b)}};
      o.text = std::string(r.interlacing ? "interlacing" : "not interlacing") + ": " + r.pattern + "\n";
    } else if (app.got_subcommand("families")) {
      Json rows = Json::array();
      for (const auto& e : fourteen_families(catalog)) {
        rows.push_back(to_json(e));
        o.text += factors_to_spec(e.g_factors) + "\t" + std::string(to_string(e.status)) + "\t" + e.provenance + "\n";
      }
      o.json = {{"f", to_json(power(cyclotomic(1), 4))}, {"count", rows.size()}, {"families", rows}};
    } else if (*closure) {
      const auto [f, g] = detail::resolve_pair(pair);
      const auto h = build_group(f, g);
      const auto r = finite_closure(h, cap);
      o.json = {{"cap", cap}, {"finite", r.finite()}, {"order", r.order ? Json(*r.order) : Json(nullptr)},
                {"status", r.finite() ? "Finite" : "ExceededCap"}};
      o.text = r.finite() ? "order " + std::to_string(*r.order) + "\n" : "exceeded cap " + std::to_string(cap) + "\n";
    } else if (*cont) {
      const auto eq = odeflow::hypergeometric_system(detail::parse_numeric_list(num_alpha), detail::parse_numeric_list(num_beta));
      odeflow::PathSpec path{odeflow::Complex(opt.basepoint, 0.0), {}, path_closed};
      for (const auto& p : hypermono::detail::split(hypermono::detail::strip(path_text), ';'))
        if (!p.empty()) path.waypoints.push_back(detail::parse_point(p));
      const auto r = odeflow::continue_along(eq.first_order_system(), path, mopt.continuation);
      o.json = {{"transport", to_json(r.transport)}, {"steps", r.steps}, {"max_order_used", r.max_order_used},
                {"estimated_error", r.estimated_error}};
      o.text = "transport:\n" + detail::text_matrix(r.transport) + "steps " + std::to_string(r.steps) + "\n";
    } else if (*batch) {
      if (nested) throw detail::UsageError("batch files cannot contain batch requests");
      std::ifstream in(batch_file);
      if (!in) fail(ErrorKind::InvalidArgument, "cannot open batch file '" + batch_file + "'");
      Json results = Json::array();
      int worst = kOk;
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        for (std::string t; ls >> t;) tokens.push_back(t);
        if (tokens.empty() || tokens.front().front() == '#') continue;
        // Items are always collected as JSON.
        for (auto it = tokens.begin(); it != tokens.end();)
          if (*it == "--output" && it + 1 != tokens.end()) it = tokens.erase(it, it + 2);
          else ++it;
        // Each request inherits the batch-level options unless it sets its own.
        std::vector<std::string> full{"--output", "json", "--tol", std::to_string(opt.tol), "--max-order",
                                      std::to_string(opt.max_order)};
        if (!opt.catalog_path.empty()) full.insert(full.end(), {"--catalog", opt.catalog_path});
        full.insert(full.end(), tokens.begin(), tokens.end());
        std::ostringstream sub_out, sub_err;
        const int code = run(full, sub_out, sub_err, true);
        worst = std::max(worst, code);
        Json item = {{"request", line}, {"exit_code", code}};
        if (code == kUsageError) {
          item["error"] = {{"kind", "UsageError"}, {"message", sub_err.str().substr(0, sub_err.str().find('\n'))}};
        } else {
          Json body = Json::parse(sub_out.str());
          if (code == kDomainError) item["error"] = body["error"];
          else item["result"] = body;
        }
        results.push_back(std::move(item));
        o.text += std::to_string(code) + "\t" + line + "\n";
      }
      o.json = {{"requests", results.size()}, {"results", results}};
      if (json) out << o.json.dump(2) << "\n";
      else out << o.text;
      return worst;
    }
  } catch (const detail::UsageError& e) {
    return usage(e.what());
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    return emit_error(Error(ErrorKind::InternalInconsistency, e.what()));
  }

  if (json) out << o.json.dump(2) << "\n";
  else out << o.text;
  return kOk;
}

}  // namespace hypermono::cli
