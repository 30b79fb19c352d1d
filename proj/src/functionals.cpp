#include "brennan/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "brennan/errors.hpp"

namespace brennan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Below this gap 1 - r no longer resolves the distance to the boundary.
constexpr double kFinestEps = 1e-12;

FunctionalResult disc_power_integral(const ConformalPair& pair, FunctionalKind kind, double s,
                                     const GradingSpec& spec) {
  FunctionalResult res;
  res.kind = kind;
  res.map = pair.descriptor();
  res.s = s;
  const auto angles = pair.singular_angles();
  res.integral = integrate_disc(derivative_power(pair, 2.0 - s), angles, spec);
  res.kpq_value = kNaN;
  return res;
}

}  // namespace

const char* to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::brennan: return "brennan";
    case FunctionalKind::inverse_brennan: return "inverse_brennan";
    case FunctionalKind::kpq: return "kpq";
  }
  return "unknown";
}

const char* to_string(Side s) { return s == Side::upper ? "upper" : "lower"; }

Side parse_side(const std::string& text) {
  if (text == "upper") return Side::upper;
  if (text == "lower") return Side::lower;
  throw DomainError("side must be 'upper' or 'lower', got '" + text + "'");
}

DiscIntegrand derivative_power(const ConformalPair& pair, double t) {
  if (t == 0.0) return [](cplx) { return 1.0; };
  return [&pair, t](cplx w) { return std::pow(std::abs(pair.dpsi_unchecked(w)), t); };
}

double p_distortion(const ConformalPair& pair, cplx z, double p) {
  if (!(p >= 1.0)) throw DomainError("p_distortion: p must be >= 1");
  const cplx w = invert_map(pair, z);
  if (p == 2.0) return 1.0;
  return std::pow(std::abs(pair.dpsi(w)), 2.0 - p);
}

FunctionalResult brennan_integral(const ConformalPair& pair, double s, const GradingSpec& spec) {
  return disc_power_integral(pair, FunctionalKind::brennan, s, spec);
}

FunctionalResult inverse_brennan_integral(const ConformalPair& pair, double r, const GradingSpec& spec) {
  return disc_power_integral(pair, FunctionalKind::inverse_brennan, 2.0 - r, spec);
}

FunctionalResult kpq_functional(const ConformalPair& pair, Exponent p, double q, const GradingSpec& spec) {
  if (p.is_finite() && !(p.value() > 2.0)) {
    throw DomainError("kpq_functional: p must lie in (2, inf], got p=" + p.to_string());
  }
  const double s = s_from_pq(p, q);  // validates 1 <= q < p
  FunctionalResult res = disc_power_integral(pair, FunctionalKind::kpq, s, spec);
  res.p = p;
  res.q = q;
  const double power = p.is_infinite() ? 1.0 / q : (p.value() - q) / (p.value() * q);
  switch (res.integral.classification) {
    case TailClass::converged: res.kpq_value = std::pow(res.integral.value, power); break;
    case TailClass::diverging: res.kpq_value = kInf; break;
    case TailClass::inconclusive: res.kpq_value = kNaN; break;
  }
  return res;
}

std::vector<FunctionalResult> brennan_scan(const ConformalPair& pair, double from, double to, double step,
                                           const GradingSpec& spec) {
  if (!(std::isfinite(from) && std::isfinite(to) && from < to)) throw DomainError("scan: requires s_from < s_to");
  if (!(step > 0.0)) throw DomainError("scan: step must be > 0");
  spec.validate();
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  std::vector<std::future<FunctionalResult>> jobs;
  jobs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = from + static_cast<double>(i) * step;
    jobs.push_back(std::async(std::launch::async, [&pair, s, &spec] { return brennan_integral(pair, s, spec); }));
  }
  std::vector<FunctionalResult> out;
  out.reserve(count);
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

CriticalExponentReport critical_exponent(const ConformalPair& pair, Side side, double tol,
                                         const GradingSpec& spec) {
  if (!(tol >= 0.01)) throw DomainError("critical_exponent: tol must be >= 0.01");
  spec.validate();

  CriticalExponentReport rep;
  rep.map = pair.descriptor();
  rep.side = side;

  auto probe = [&](double s) {
    IntegralEstimate est = brennan_integral(pair, s, spec).integral;
    if (est.classification == TailClass::inconclusive) {
      GradingSpec finer = spec;
      finer.eps_min = std::max(spec.eps_min * 1e-3, kFinestEps);
      est = brennan_integral(pair, s, finer).integral;
      if (est.classification == TailClass::inconclusive) {
        throw QuadratureError("critical_exponent: inconclusive probe at s = " + std::to_string(s) + " on " +
                              rep.map + " after eps_min refinement");
      }
    }
    rep.probes.push_back({s, est.classification, est.decay_exponent});
    return est.converged();
  };

  // s = 2 is the area identity and always converges.
  double good = 2.0;
  double bad = side == Side::upper ? kUpperSearchEnd : kLowerSearchStart;
  probe(good);
  if (probe(bad)) {
    rep.bounded = false;
    rep.s_star = side == Side::upper ? kInf : -kInf;
    rep.bracket_lo = side == Side::upper ? bad : -kInf;
    rep.bracket_hi = side == Side::upper ? kInf : bad;
    return rep;
  }
  while (std::abs(bad - good) > tol) {
    const double mid = 0.5 * (good + bad);
    if (probe(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  rep.bracket_lo = std::min(good, bad);
  rep.bracket_hi = std::max(good, bad);
  rep.s_star = 0.5 * (good + bad);
  return rep;
}

Thresholds threshold_oracle(const ConformalPair& pair) {
  Thresholds t;
  for (const auto& pt : pair.singular_points()) {
    const double e = pt.exponent;
    if (e > 0.0) {
      const double up = 2.0 + 2.0 / e;
      t.upper = t.upper ? std::min(*t.upper, up) : up;
    } else if (e < 0.0) {
      const double lo = 2.0 - 2.0 / (-e);
      t.lower = t.lower ? std::max(*t.lower, lo) : lo;
    }
  }
  return t;
}

}  // namespace brennan
