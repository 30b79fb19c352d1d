#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "brennan/catalog.hpp"
#include "brennan/errors.hpp"
#include "brennan/exponents.hpp"
#include "brennan/functionals.hpp"
#include "brennan/quadrature.hpp"
#include "brennan/report.hpp"
#include "brennan/verifier.hpp"

namespace brennan::cli {

namespace {

using report::Json;
using report::number;
using report::to_json;

struct Output {
  std::string format;
  std::string path;
};

struct Outcome {
  int code = kExitOk;
  std::string body;
};

// Thrown for invalid flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_output(CLI::App* cmd, Output& o, const std::string& default_format, bool csv_allowed) {
  o.format = default_format;
  auto* fmt = cmd->add_option("--format", o.format, "Output format")->capture_default_str();
  if (csv_allowed) {
    fmt->check(CLI::IsMember({"json", "csv"}));
  } else {
    fmt->check(CLI::IsMember({"json"}));
  }
  cmd->add_option("--out", o.path, "Output file (default: stdout, or $" + std::string(kOutDirEnv) + "/<command>.<ext>)");
}

void add_grading(CLI::App* cmd, GradingSpec& g) {
  cmd->add_option("--eps-min", g.eps_min, "Innermost boundary gap 1 - |w|")->capture_default_str();
  cmd->add_option("--annulus-ratio", g.annulus_ratio, "Geometric ratio between annulus gaps")->capture_default_str();
  cmd->add_option("--radial-order", g.radial_order, "Gauss-Legendre order per panel")->capture_default_str();
  cmd->add_option("--angular-base", g.angular_base, "Angular nodes per full turn away from singular directions")
      ->capture_default_str();
  cmd->add_option("--angular-boost", g.angular_boost, "Angular refinement factor near singular directions")
      ->capture_default_str();
}

void add_map(CLI::App* cmd, std::string& map) {
  cmd->add_option("--map", map, "Map descriptor, e.g. koebe, sector:1.5, cardioid*moebius:0.25,0.25,0.4")
      ->required();
}

Exponent parse_exponent(const std::string& text, const char* flag) {
  try {
    return Exponent::parse(text);
  } catch (const DomainError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

Json pair_json(double re, double im) { return Json::array({number(re), number(im)}); }

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

Json exponent_json(const std::optional<Exponent>& x) { return x ? to_json(*x) : Json(nullptr); }

std::string json_body(const std::string& command, Json inputs, Json result, Json diagnostics) {
  return report::dump(report::envelope(command, std::move(inputs), std::move(result), std::move(diagnostics)));
}

int exit_for(TailClass c) {
  switch (c) {
    case TailClass::converged: return kExitOk;
    case TailClass::diverging: return kExitVerdict;
    case TailClass::inconclusive: return kExitError;
  }
  return kExitError;
}

Json estimate_diagnostics(const IntegralEstimate& e, const GradingSpec& g) {
  Json d;
  d["grading"] = to_json(g);
  Json annuli = Json::array();
  for (double c : e.annulus_contributions) annuli.push_back(number(c));
  d["annulus_contributions"] = std::move(annuli);
  return d;
}

Json probes_json(const CriticalExponentReport& r) {
  Json probes = Json::array();
  for (const auto& p : r.probes) {
    Json row;
    row["s"] = number(p.s);
    row["classification"] = to_string(p.classification);
    row["decay_exponent"] = number(p.decay_exponent);
    probes.push_back(std::move(row));
  }
  return probes;
}

std::vector<TestFunction> parse_functions(const std::vector<std::string>& names, const std::vector<TestFunction>& dflt) {
  if (names.empty()) return dflt;
  std::vector<TestFunction> out;
  for (const auto& n : names) out.push_back(parse_test_function(n));
  return out;
}

// Rejects (p, q) outside 2 < p < inf, 1 <= q < p, naming the violated
// condition and why the regime is excluded.
void require_composition_regime(Exponent p, double q) {
  const std::string got = " (got p=" + p.to_string() + ", q=" + Exponent(q).to_string() + ")";
  switch (classify_regime(p, q)) {
    case Regime::unbounded_regime:
      throw DomainError("violated precondition q < p" + got +
                        ": for q > p there are no composition operators L^1_p -> L^1_q induced by a conformal map, "
                        "so no bound can be tested");
    case Regime::degenerate_equal:
      throw DomainError("violated precondition q < p" + got +
                        ": q = p is only admissible at p = 2, where the operator is an isometry (use `isometry`)");
    case Regime::isometry:
      throw DomainError("violated precondition q < p" + got +
                        ": p = q = 2 is the isometry case; use the `isometry` command");
    case Regime::sup_norm:
      throw DomainError("violated precondition p < inf" + got +
                        ": sampled seminorm ratios need a finite p");
    case Regime::bounded_candidate: break;
  }
  if (!(p.value() > 2.0)) {
    throw DomainError("violated precondition p > 2" + got +
                      ": for p <= 2 the composition operators considered here are not defined by K_{p,q}");
  }
  if (!(q >= 1.0)) throw DomainError("violated precondition q >= 1" + got);
}

Outcome cmd_catalog() {
  Json maps = Json::array();
  for (const auto& pair : standard_catalog()) {
    Json m;
    m["descriptor"] = pair.descriptor();
    Json sing = Json::array();
    for (const auto& pt : pair.singular_points()) {
      Json row;
      row["w0"] = pair_json(pt.w0.real(), pt.w0.imag());
      row["exponent"] = number(pt.exponent);
      sing.push_back(std::move(row));
    }
    m["singular_points"] = std::move(sing);
    const auto t = threshold_oracle(pair);
    m["s_lower"] = optional_number(t.lower);
    m["s_upper"] = optional_number(t.upper);
    maps.push_back(std::move(m));
  }
  return {kExitOk, json_body("catalog", Json::object(), std::move(maps), Json::object())};
}

Outcome cmd_exponents(const std::string& p_text, const std::optional<double>& s, const std::optional<double>& q) {
  const Exponent p = parse_exponent(p_text, "--p");
  Json inputs;
  inputs["p"] = to_json(p);
  inputs["s"] = optional_number(s);
  inputs["q"] = optional_number(q);

  Json result;
  result["p"] = to_json(p);
  result["p_conj"] = to_json(holder_conjugate(p));
  if (p.is_finite()) {
    result["alpha_range"] = to_json(alpha_range(p.value()));
  } else {
    result["alpha_range"] = nullptr;
  }
  if (s) {
    const auto rec = make_record(p, *s);
    result["s"] = optional_number(rec.s);
    result["r"] = optional_number(rec.r);
    result["q"] = optional_number(rec.q);
    result["alpha"] = optional_number(rec.alpha);
    result["q_conj"] = exponent_json(rec.q_conj);
  }
  if (q) {
    result["regime"] = to_string(classify_regime(p, *q));
    if (*q >= 1.0 && (p.is_infinite() || *q < p.value())) result["s_from_pq"] = number(s_from_pq(p, *q));
  }
  result["brennan_range"] = to_json(brennan_range());
  result["inverse_range"] = to_json(inverse_range());
  result["known_bounds"] = to_json(known_bounds());
  return {kExitOk, json_body("exponents", std::move(inputs), std::move(result), Json::object())};
}

Outcome cmd_integrate(const std::string& map, const std::optional<double>& s, const std::optional<double>& r,
                      const GradingSpec& g) {
  if (s.has_value() == r.has_value()) throw UsageError("integrate: exactly one of --s or --r is required");
  const auto pair = parse_map(map);
  const FunctionalResult res = s ? brennan_integral(pair, *s, g) : inverse_brennan_integral(pair, *r, g);
  Json inputs;
  inputs["map"] = pair.descriptor();
  if (s) {
    inputs["s"] = number(*s);
  } else {
    inputs["r"] = number(*r);
  }
  return {exit_for(res.integral.classification),
          json_body("integrate", std::move(inputs), to_json(res), estimate_diagnostics(res.integral, g))};
}

Outcome cmd_scan(const std::string& map, double from, double to, double step, const GradingSpec& g,
                 const Output& o) {
  const auto pair = parse_map(map);
  const auto rows = brennan_scan(pair, from, to, step, g);
  if (o.format == "csv") return {kExitOk, report::scan_csv(rows)};
  Json inputs;
  inputs["map"] = pair.descriptor();
  inputs["s_from"] = number(from);
  inputs["s_to"] = number(to);
  inputs["step"] = number(step);
  Json result = Json::array();
  for (const auto& r : rows) result.push_back(to_json(r));
  Json diag;
  diag["grading"] = to_json(g);
  return {kExitOk, json_body("scan", std::move(inputs), std::move(result), std::move(diag))};
}

Outcome cmd_critical(const std::string& map, const std::string& side, double tol, const GradingSpec& g) {
  std::vector<Side> sides;
  if (side == "both") {
    sides = {Side::upper, Side::lower};
  } else {
    sides = {parse_side(side)};
  }
  const auto pair = parse_map(map);
  Json inputs;
  inputs["map"] = pair.descriptor();
  inputs["side"] = side;
  inputs["tol"] = number(tol);
  Json result;
  Json diag;
  diag["grading"] = to_json(g);
  for (Side sd : sides) {
    const auto rep = critical_exponent(pair, sd, tol, g);
    result[to_string(sd)] = to_json(rep);
    diag[std::string(to_string(sd)) + "_probes"] = probes_json(rep);
  }
  const auto oracle = threshold_oracle(pair);
  diag["oracle_lower"] = optional_number(oracle.lower);
  diag["oracle_upper"] = optional_number(oracle.upper);
  return {kExitOk, json_body("critical", std::move(inputs), std::move(result), std::move(diag))};
}

Outcome cmd_verify(const std::string& map, const std::string& p_text, double q,
                   const std::vector<std::string>& functions, const GradingSpec& g) {
  const Exponent p = parse_exponent(p_text, "--p");
  require_composition_regime(p, q);
  const auto pair = parse_map(map);
  std::vector<TestFunction> family;
  Json skipped = Json::array();
  for (const auto& f : parse_functions(functions, standard_family())) {
    if (f.admissible(p.value())) {
      family.push_back(f);
    } else {
      skipped.push_back(f.descriptor());
    }
  }
  const auto rep = norm_ratio_report(pair, p.value(), q, family, g);
  Json inputs;
  inputs["map"] = pair.descriptor();
  inputs["p"] = to_json(p);
  inputs["q"] = number(q);
  Json diag;
  diag["grading"] = to_json(g);
  diag["inadmissible_skipped"] = std::move(skipped);
  diag["ratio_tolerance"] = number(kRatioTolerance);
  if (rep.bound_classification == TailClass::inconclusive) {
    throw QuadratureError("verify-composition: K_{p,q} integral is inconclusive on " + rep.map);
  }
  const int code = rep.bound_holds() ? kExitOk : kExitVerdict;
  return {code, json_body("verify-composition", std::move(inputs), to_json(rep), std::move(diag))};
}

Outcome cmd_isometry(const std::string& map, const std::vector<std::string>& functions, const IsometryOptions& opts) {
  const auto pair = parse_map(map);
  Json inputs;
  inputs["map"] = pair.descriptor();
  inputs["patch_radius"] = number(opts.patch_radius);
  inputs["rays"] = opts.rays;
  Json result = Json::array();
  bool ok = true;
  for (const auto& f : parse_functions(functions, isometry_family())) {
    const auto r = isometry_check(pair, f, opts);
    Json row;
    row["function"] = f.descriptor();
    const Json body = to_json(r);
    for (auto it = body.begin(); it != body.end(); ++it) row[it.key()] = it.value();
    row["holds"] = std::abs(r.ratio - 1.0) <= kRatioTolerance;
    ok = ok && row["holds"].get<bool>();
    result.push_back(std::move(row));
  }
  Json diag;
  diag["ratio_tolerance"] = number(kRatioTolerance);
  return {ok ? kExitOk : kExitVerdict, json_body("isometry", std::move(inputs), std::move(result), std::move(diag))};
}

Outcome cmd_duality(const std::string& map, double p, double q, const GradingSpec& g) {
  const auto pair = parse_map(map);
  const auto res = duality_check(pair, p, q, g);
  Json inputs;
  inputs["map"] = pair.descriptor();
  inputs["p"] = number(p);
  inputs["q"] = number(q);
  Json diag;
  diag["grading"] = to_json(g);
  diag["lhs"] = to_json(res.lhs);
  diag["rhs"] = to_json(res.rhs);
  diag["tolerance"] = number(kDualityTolerance);
  if (res.lhs.classification == TailClass::inconclusive || res.rhs.classification == TailClass::inconclusive) {
    throw QuadratureError("duality: inconclusive integral on " + pair.descriptor());
  }
  return {res.holds() ? kExitOk : kExitVerdict,
          json_body("duality", std::move(inputs), to_json(res), std::move(diag))};
}

Outcome cmd_equivalence(const std::string& map, double s, const std::vector<double>& grid, const GradingSpec& g,
                        const Output& o) {
  const auto pair = parse_map(map);
  const auto table = equivalence_table(pair, s, grid, standard_family(), g);
  const bool consistent_finite = table.all_finite() && table.integral_spread() <= kEquivalenceSpread &&
                                 table.q_below_p() && table.bounds_hold();
  const int code = consistent_finite || table.all_diverging() ? kExitOk : kExitVerdict;
  if (o.format == "csv") return {code, report::equivalence_csv(table)};
  Json inputs;
  inputs["map"] = pair.descriptor();
  inputs["s"] = number(s);
  Json pg = Json::array();
  for (double p : grid) pg.push_back(number(p));
  inputs["p_grid"] = std::move(pg);
  Json diag;
  diag["grading"] = to_json(g);
  diag["spread_tolerance"] = number(kEquivalenceSpread);
  return {code, json_body("equivalence", std::move(inputs), to_json(table), std::move(diag))};
}

int emit(const std::string& command, const Outcome& res, const Output& o, std::ostream& out, std::ostream& err) {
  namespace fs = std::filesystem;
  fs::path target;
  if (!o.path.empty()) {
    target = o.path;
  } else if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
    target = fs::path(dir) / (command + "." + o.format);
  }
  if (target.empty()) {
    out << res.body;
    return res.code;
  }
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  std::ofstream f(target, std::ios::binary);
  f << res.body;
  if (!f) {
    err << "error: cannot write " << target.string() << "\n";
    return kExitError;
  }
  return res.code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical lab for Brennan's integral and conformal composition operators", "brennan"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string map;
  GradingSpec grading;
  // One per subcommand so each keeps its own default format.
  std::map<const CLI::App*, Output> outputs;

  auto* catalog = app.add_subcommand("catalog", "List the built-in conformal maps with their singular data");
  add_output(catalog, outputs[catalog], "json", false);

  std::string p_text;
  std::optional<double> s_opt;
  std::optional<double> r_opt;
  std::optional<double> q_opt;
  auto* exponents = app.add_subcommand("exponents", "Exponent algebra for a Sobolev exponent p");
  exponents->add_option("--p", p_text, "Sobolev exponent p (number or inf)")->required();
  exponents->add_option("--s", s_opt, "Brennan exponent s");
  exponents->add_option("--q", q_opt, "Target exponent q, for regime classification");
  add_output(exponents, outputs[exponents], "json", false);

  auto* integrate = app.add_subcommand("integrate", "Evaluate int_Omega |phi'|^s (or |psi'|^r on the disc)");
  add_map(integrate, map);
  auto* s_flag = integrate->add_option("--s", s_opt, "Brennan exponent s");
  integrate->add_option("--r", r_opt, "Inverse exponent r = 2 - s")->excludes(s_flag);
  add_grading(integrate, grading);
  add_output(integrate, outputs[integrate], "json", false);

  double s_from = 0.0;
  double s_to = 0.0;
  double step = 0.0;
  auto* scan = app.add_subcommand("scan", "Sweep Brennan's integral over a range of s");
  add_map(scan, map);
  scan->add_option("--s-from", s_from, "First s")->required();
  scan->add_option("--s-to", s_to, "Last s (inclusive)")->required();
  scan->add_option("--step", step, "Step in s")->required();
  add_grading(scan, grading);
  add_output(scan, outputs[scan], "csv", true);

  std::string side = "both";
  double tol = 0.01;
  auto* critical = app.add_subcommand("critical", "Bisect for the critical Brennan exponent");
  add_map(critical, map);
  critical->add_option("--side", side, "upper, lower or both")
      ->check(CLI::IsMember({"upper", "lower", "both"}))
      ->capture_default_str();
  critical->add_option("--tol", tol, "Bracket width (>= 0.01)")->capture_default_str();
  add_grading(critical, grading);
  add_output(critical, outputs[critical], "json", false);

  double q = 0.0;
  double p_num = 0.0;
  std::vector<std::string> functions;
  auto* verify = app.add_subcommand("verify-composition", "Sampled seminorm ratios against K_{p,q}");
  add_map(verify, map);
  verify->add_option("--p", p_text, "Source exponent p")->required();
  verify->add_option("--q", q, "Target exponent q")->required();
  verify->add_option("--function", functions, "Test function (repeatable; default: standard family of 8)");
  add_grading(verify, grading);
  add_output(verify, outputs[verify], "json", false);

  IsometryOptions iso;
  auto* isometry = app.add_subcommand("isometry", "Forward-patch check of the p = 2 isometry");
  add_map(isometry, map);
  isometry->add_option("--function", functions,
                       "Test function (repeatable; default: harmonic_poly:2, boundary_power:1.5, shifted_log)");
  isometry->add_option("--patch-radius", iso.patch_radius, "Disc patch radius")->capture_default_str();
  isometry->add_option("--rays", iso.rays, "Polar rays on the Omega side")->capture_default_str();
  add_output(isometry, outputs[isometry], "json", false);

  auto* duality = app.add_subcommand("duality", "Compare the two integrals of the inverse composition criterion");
  add_map(duality, map);
  duality->add_option("--p", p_num, "Exponent p")->required();
  duality->add_option("--q", q, "Exponent q, 1 < q < p")->required();
  add_grading(duality, grading);
  add_output(duality, outputs[duality], "json", false);

  double s_value = 0.0;
  std::vector<double> p_grid{2.5, 3.0, 4.0, 6.0, 10.0};
  auto* equivalence = app.add_subcommand("equivalence", "K_{p,q(p,s)} across a grid of p at fixed s");
  add_map(equivalence, map);
  equivalence->add_option("--s", s_value, "Brennan exponent s")->required();
  equivalence->add_option("--p-grid", p_grid, "Comma-separated p values (each > 2)")
      ->delimiter(',')
      ->capture_default_str();
  add_grading(equivalence, grading);
  add_output(equivalence, outputs[equivalence], "json", true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  CLI::App* cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  const Output& output = outputs.at(cmd);
  try {
    grading.validate();
    Outcome res;
    if (cmd == catalog) {
      res = cmd_catalog();
    } else if (cmd == exponents) {
      res = cmd_exponents(p_text, s_opt, q_opt);
    } else if (cmd == integrate) {
      res = cmd_integrate(map, s_opt, r_opt, grading);
    } else if (cmd == scan) {
      res = cmd_scan(map, s_from, s_to, step, grading, output);
    } else if (cmd == critical) {
      res = cmd_critical(map, side, tol, grading);
    } else if (cmd == verify) {
      res = cmd_verify(map, p_text, q, functions, grading);
    } else if (cmd == isometry) {
      res = cmd_isometry(map, functions, iso);
    } else if (cmd == duality) {
      res = cmd_duality(map, p_num, q, grading);
    } else {
      res = cmd_equivalence(map, s_value, p_grid, grading, output);
    }
    return emit(name, res, output, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const DomainError& e) {
    err << name << ": domain error: " << e.what() << "\n";
  } catch (const InadmissibleFunction& e) {
    err << name << ": inadmissible test function: " << e.what() << "\n";
  } catch (const ConvergenceError& e) {
    err << name << ": convergence failure: " << e.what() << "\n";
  } catch (const QuadratureError& e) {
    err << name << ": quadrature failure: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << name << ": error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace brennan::cli
