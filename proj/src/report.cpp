#include "brennan/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace brennan::report {

namespace {

void write_string(std::ostringstream& os, const std::string& s) {
  // Reuse the library escaper for strings.
  os << Json(s).dump();
}

void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner;
        write_string(os, it.key());
        os << ": ";
        write(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) os << ",\n";
        first = false;
        os << inner;
        write(os, v, indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

Json number(double x) {
  if (std::isfinite(x)) return Json(x);
  return Json(format_double(x));
}

Json to_json(Exponent p) { return p.is_infinite() ? Json("inf") : number(p.value()); }

Json to_json(const OpenInterval& iv) { return Json::array({number(iv.lo), number(iv.hi)}); }

Json to_json(const KnownBounds& b) {
  Json j;
  j["easy_upper"] = number(b.easy_upper);
  j["brennan_conjectured"] = to_json(b.brennan_conjectured);
  j["pommerenke"] = number(b.pommerenke);
  j["bertilsson"] = number(b.bertilsson);
  j["hedenmalm_shimorin"] = number(b.hedenmalm_shimorin);
  j["inverse_proved_lower"] = number(b.inverse_proved_lower);
  j["inverse_conjectured"] = to_json(b.inverse_conjectured);
  return j;
}

Json to_json(const GradingSpec& g) {
  Json j;
  j["eps_min"] = number(g.eps_min);
  j["annulus_ratio"] = number(g.annulus_ratio);
  j["radial_order"] = g.radial_order;
  j["angular_base"] = g.angular_base;
  j["angular_boost"] = g.angular_boost;
  return j;
}

Json to_json(const IntegralEstimate& e) {
  Json j;
  j["value"] = number(e.value);
  j["abs_error_estimate"] = number(e.abs_error_estimate);
  j["truncation_eps"] = number(e.truncation_eps);
  j["tail"] = number(e.tail_estimate);
  j["classification"] = to_string(e.classification);
  j["decay_exponent"] = number(e.decay_exponent);
  return j;
}

Json to_json(const FunctionalResult& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["map"] = r.map;
  j["s"] = number(r.s);
  j["r"] = number(r.r());
  if (r.kind == FunctionalKind::kpq) {
    j["p"] = to_json(r.p);
    j["q"] = number(r.q);
  }
  const Json integral = to_json(r.integral);
  for (auto it = integral.begin(); it != integral.end(); ++it) j[it.key()] = it.value();
  if (r.kind == FunctionalKind::kpq) j["kpq_value"] = number(r.kpq_value);
  return j;
}

Json to_json(const CriticalExponentReport& r) {
  Json j;
  j["map"] = r.map;
  j["side"] = to_string(r.side);
  j["bounded"] = r.bounded;
  j["s_star"] = number(r.s_star);
  j["bracket"] = Json::array({number(r.bracket_lo), number(r.bracket_hi)});
  return j;
}

Json to_json(const NormRatioReport& r) {
  Json j;
  j["map"] = r.map;
  j["p"] = number(r.p);
  j["q"] = number(r.q);
  j["bound_kpq"] = number(r.bound_kpq);
  j["bound_classification"] = to_string(r.bound_classification);
  j["bound_integral"] = number(r.bound_integral);
  j["max_ratio"] = number(r.max_ratio);
  j["bound_holds"] = r.bound_holds();
  Json samples = Json::array();
  for (const auto& s : r.samples) {
    Json row;
    row["function"] = s.function;
    row["seminorm_p"] = number(s.seminorm_p);
    row["pullback_seminorm_q"] = number(s.pullback_seminorm_q);
    row["ratio"] = number(s.ratio);
    samples.push_back(std::move(row));
  }
  j["samples"] = std::move(samples);
  return j;
}

Json to_json(const IsometryResult& r) {
  Json j;
  j["omega_side"] = number(r.omega_side);
  j["disc_side"] = number(r.disc_side);
  j["ratio"] = number(r.ratio);
  return j;
}

Json to_json(const DualityResult& r) {
  Json j;
  j["q_conj"] = number(r.exponents.q_conj);
  j["p_conj"] = number(r.exponents.p_conj);
  j["shared_exponent"] = number(r.exponents.shared_exponent);
  j["lhs"] = number(r.lhs.value);
  j["rhs"] = number(r.rhs.value);
  j["lhs_classification"] = to_string(r.lhs.classification);
  j["rhs_classification"] = to_string(r.rhs.classification);
  j["rel_diff"] = number(r.rel_diff);
  j["holds"] = r.holds();
  return j;
}

Json to_json(const EquivalenceTable& t) {
  Json j;
  j["map"] = t.map;
  j["s"] = number(t.s);
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["p"] = number(r.p);
    row["q"] = number(r.q);
    row["s_recovered"] = number(r.s_recovered);
    row["integral"] = number(r.kpq.integral.value);
    row["classification"] = to_string(r.kpq.integral.classification);
    row["kpq_finite"] = r.kpq.finite();
    row["kpq"] = number(r.kpq.kpq_value);
    row["max_ratio"] = number(r.ratios.max_ratio);
    row["bound_holds"] = r.ratios.bound_holds();
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["all_finite"] = t.all_finite();
  j["all_diverging"] = t.all_diverging();
  j["integral_spread"] = number(t.integral_spread());
  j["q_below_p"] = t.q_below_p();
  j["bounds_hold"] = t.bounds_hold();
  return j;
}

Json envelope(const std::string& command, Json inputs, Json result, Json diagnostics) {
  Json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["result"] = std::move(result);
  j["diagnostics"] = std::move(diagnostics);
  return j;
}

std::string scan_csv(const std::vector<FunctionalResult>& rows) {
  std::string out = "s,value,tail,classification\n";
  for (const auto& r : rows) {
    out += format_double(r.s) + "," + format_double(r.integral.value) + "," +
           format_double(r.integral.tail_estimate) + "," + to_string(r.integral.classification) + "\n";
  }
  return out;
}

std::string equivalence_csv(const EquivalenceTable& t) {
  std::string out = "p,q,s_recovered,integral,classification,kpq,max_ratio,bound_holds\n";
  for (const auto& r : t.rows) {
    out += format_double(r.p) + "," + format_double(r.q) + "," + format_double(r.s_recovered) + "," +
           format_double(r.kpq.integral.value) + "," + to_string(r.kpq.integral.classification) + "," +
           format_double(r.kpq.kpq_value) + "," + format_double(r.ratios.max_ratio) + "," +
           (r.ratios.bound_holds() ? "true" : "false") + "\n";
  }
  return out;
}

}  // namespace brennan::report
