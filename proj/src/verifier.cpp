#include "brennan/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "brennan/errors.hpp"

namespace brennan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void require_pq(double p, double q, const char* what) {
  if (!(q >= 1.0 && q < p)) {
    throw DomainError(std::string(what) + ": requires 1 <= q < p, got p=" + num(p) + " q=" + num(q));
  }
  if (!(p > 2.0 && std::isfinite(p))) {
    throw DomainError(std::string(what) + ": requires 2 < p < inf, got p=" + num(p));
  }
}

}  // namespace

TestFunction::TestFunction(Kind kind) : kind_(kind) {
  if (const auto* h = std::get_if<HarmonicPoly>(&kind_); h && h->k < 1) {
    throw DomainError("harmonic_poly: k must be >= 1");
  }
  if (const auto* b = std::get_if<BoundaryPower>(&kind_); b && !(b->gamma > 0.0)) {
    throw DomainError("boundary_power: gamma must be > 0");
  }
}

double TestFunction::value(cplx w) const {
  return std::visit(overloaded{
                        [&](const HarmonicPoly& h) { return std::pow(w, h.k).real(); },
                        [&](const BoundaryPower& b) { return std::pow(1.0 - std::norm(w), b.gamma); },
                        [&](const ShiftedLog&) { return std::log(std::abs(w - 2.0)); },
                    },
                    kind_);
}

double TestFunction::grad_norm(cplx w) const {
  return std::visit(overloaded{
                        [&](const HarmonicPoly& h) { return h.k * std::pow(std::abs(w), h.k - 1); },
                        [&](const BoundaryPower& b) {
                          return 2.0 * b.gamma * std::abs(w) * std::pow(1.0 - std::norm(w), b.gamma - 1.0);
                        },
                        [&](const ShiftedLog&) { return 1.0 / std::abs(w - 2.0); },
                    },
                    kind_);
}

bool TestFunction::admissible(double p) const {
  if (const auto* b = std::get_if<BoundaryPower>(&kind_)) return b->gamma > 1.0 - 1.0 / p;
  return true;
}

std::string TestFunction::descriptor() const {
  return std::visit(overloaded{
                        [](const HarmonicPoly& h) { return "harmonic_poly(" + std::to_string(h.k) + ")"; },
                        [](const BoundaryPower& b) { return "boundary_power(" + num(b.gamma) + ")"; },
                        [](const ShiftedLog&) { return std::string("shifted_log"); },
                    },
                    kind_);
}

TestFunction parse_test_function(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  try {
    std::size_t pos = 0;
    if (name == "harmonic_poly" && !arg.empty()) {
      const int k = std::stoi(arg, &pos);
      if (pos == arg.size()) return TestFunction(HarmonicPoly{k});
    } else if (name == "boundary_power" && !arg.empty()) {
      const double g = std::stod(arg, &pos);
      if (pos == arg.size()) return TestFunction(BoundaryPower{g});
    } else if (name == "shifted_log" && colon == std::string::npos) {
      return TestFunction(ShiftedLog{});
    }
  } catch (const std::logic_error&) {
  }
  throw DomainError("unknown test function '" + text + "'");
}

std::vector<TestFunction> standard_family() {
  return {
      TestFunction(HarmonicPoly{1}),     TestFunction(HarmonicPoly{2}),     TestFunction(HarmonicPoly{3}),
      TestFunction(HarmonicPoly{4}),     TestFunction(BoundaryPower{0.9}),  TestFunction(BoundaryPower{1.5}),
      TestFunction(BoundaryPower{3.0}),  TestFunction(ShiftedLog{}),
  };
}

std::vector<TestFunction> isometry_family() {
  return {TestFunction(HarmonicPoly{2}), TestFunction(BoundaryPower{1.5}), TestFunction(ShiftedLog{})};
}

double seminorm(const TestFunction& f, double p, const GradingSpec& spec) {
  if (!(p >= 1.0 && std::isfinite(p))) throw DomainError("seminorm: p must lie in [1, inf)");
  if (!f.admissible(p)) {
    throw InadmissibleFunction(f.descriptor() + " is not in L^1_" + num(p) + "(D)");
  }
  const auto est = integrate_disc([&](cplx w) { return std::pow(f.grad_norm(w), p); }, {}, spec);
  if (!est.converged()) {
    throw InadmissibleFunction("seminorm of " + f.descriptor() + " for p=" + num(p) + " is " +
                               to_string(est.classification));
  }
  return std::pow(est.value, 1.0 / p);
}

PullbackSeminorm pullback_seminorm(const ConformalPair& pair, const TestFunction& f, double q,
                                   const GradingSpec& spec) {
  if (!(q >= 1.0 && std::isfinite(q))) throw DomainError("pullback_seminorm: q must lie in [1, inf)");
  const double t = 2.0 - q;
  const auto angles = pair.singular_angles();
  DiscIntegrand g;
  if (t == 0.0) {
    g = [&](cplx w) { return std::pow(f.grad_norm(w), q); };
  } else {
    g = [&](cplx w) { return std::pow(f.grad_norm(w), q) * std::pow(std::abs(pair.dpsi_unchecked(w)), t); };
  }
  PullbackSeminorm out{0.0, integrate_disc(g, angles, spec)};
  switch (out.integral.classification) {
    case TailClass::converged: out.value = std::pow(out.integral.value, 1.0 / q); break;
    case TailClass::diverging: out.value = kInf; break;
    case TailClass::inconclusive: out.value = kNaN; break;
  }
  return out;
}

bool NormRatioReport::bound_holds() const {
  if (!bound_finite()) return true;
  return max_ratio <= bound_kpq * (1.0 + kRatioTolerance);
}

NormRatioReport norm_ratio_report(const ConformalPair& pair, double p, double q,
                                  const std::vector<TestFunction>& family, const GradingSpec& spec) {
  require_pq(p, q, "norm_ratio_report");
  if (family.empty()) throw DomainError("norm_ratio_report: empty test family");
  for (const auto& f : family) {
    if (!f.admissible(p)) throw InadmissibleFunction(f.descriptor() + " is not in L^1_" + num(p) + "(D)");
  }

  NormRatioReport rep;
  rep.map = pair.descriptor();
  rep.p = p;
  rep.q = q;
  const auto k = kpq_functional(pair, Exponent(p), q, spec);
  rep.bound_kpq = k.kpq_value;
  rep.bound_classification = k.integral.classification;
  rep.bound_integral = k.integral.value;

  for (const auto& f : family) {
    RatioSample sample;
    sample.function = f.descriptor();
    sample.seminorm_p = seminorm(f, p, spec);
    sample.pullback_seminorm_q = pullback_seminorm(pair, f, q, spec).value;
    sample.ratio = sample.pullback_seminorm_q / sample.seminorm_p;
    rep.max_ratio = std::max(rep.max_ratio, sample.ratio);
    rep.samples.push_back(std::move(sample));
  }
  return rep;
}

namespace {

// Polar-coordinate integration of |grad(f o phi)|^2 over psi(|w| < rho)
// about z_c = psi(0).
class ForwardPatch {
 public:
  ForwardPatch(const ConformalPair& pair, const TestFunction& f, const IsometryOptions& opts)
      : pair_(pair), f_(f), opts_(opts), center_(pair.psi(0.0)) {
    double reach = 0.0;
    constexpr int kBoundarySamples = 4096;
    for (int k = 0; k < kBoundarySamples; ++k) {
      const cplx w = std::polar(opts.patch_radius, 2.0 * std::numbers::pi * k / kBoundarySamples);
      reach = std::max(reach, std::abs(pair.psi(w) - center_));
    }
    reach_ = 1.1 * reach;
  }

  double integrate() {
    const GaussRule rule = gauss_legendre(opts_.ray_order);
    double total = 0.0;
    for (int j = 0; j < opts_.rays; ++j) {
      const cplx dir = std::polar(1.0, 2.0 * std::numbers::pi * j / opts_.rays);
      total += ray_integral(dir, rule);
    }
    return total * 2.0 * std::numbers::pi / opts_.rays;
  }

 private:
  cplx invert(cplx z, cplx seed) const {
    try {
      return invert_map(pair_, z, seed);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(std::string("isometry_check: ") + e.what());
    }
  }

  // Points where Newton fails from every seed sit next to the boundary of
  // Omega and therefore outside the compact patch image.
  bool inside(cplx z, cplx& seed) const {
    if (!pair_.in_domain(z)) return false;
    cplx w;
    try {
      w = invert_map(pair_, z, std::abs(seed) < 1.0 ? seed : cplx{0.0, 0.0});
    } catch (const ConvergenceError&) {
      return false;
    }
    seed = w;
    return std::abs(w) < opts_.patch_radius;
  }

  double composed(cplx z, cplx seed) const { return f_.value(invert(z, seed)); }

  double grad_sq(cplx z, cplx& seed) const {
    const cplx w = invert(z, seed);
    seed = w;
    const double h = 1e-4 * std::abs(pair_.dpsi(w));
    const double gx = (composed(z + h, w) - composed(z - h, w)) / (2.0 * h);
    const double gy = (composed(z + cplx(0.0, h), w) - composed(z - cplx(0.0, h), w)) / (2.0 * h);
    return gx * gx + gy * gy;
  }

  double ray_integral(cplx dir, const GaussRule& rule) const {
    std::vector<std::pair<double, double>> intervals;
    cplx seed{0.0, 0.0};
    bool in = true;
    double start = 0.0;
    double prev_t = 0.0;
    for (int k = 1; k <= opts_.march_samples; ++k) {
      const double t = reach_ * k / opts_.march_samples;
      cplx s = seed;
      const bool now = inside(center_ + t * dir, s);
      if (now != in) {
        double a = prev_t;
        double b = t;
        cplx sa = seed;
        for (int it = 0; it < 60 && b - a > 1e-15 * reach_; ++it) {
          const double m = 0.5 * (a + b);
          cplx sm = sa;
          if (inside(center_ + m * dir, sm) == in) {
            a = m;
            sa = sm;
          } else {
            b = m;
          }
        }
        const double crossing = 0.5 * (a + b);
        if (in) {
          intervals.emplace_back(start, crossing);
        } else {
          start = crossing;
        }
        in = now;
      }
      if (now) seed = s;
      prev_t = t;
    }
    if (in) intervals.emplace_back(start, reach_);

    double sum = 0.0;
    for (const auto& [a, b] : intervals) {
      const double half = 0.5 * (b - a);
      const double mid = 0.5 * (a + b);
      cplx s{0.0, 0.0};
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = mid + half * rule.nodes[i];
        sum += half * rule.weights[i] * t * grad_sq(center_ + t * dir, s);
      }
    }
    return sum;
  }

  const ConformalPair& pair_;
  const TestFunction& f_;
  IsometryOptions opts_;
  cplx center_;
  double reach_ = 0.0;
};

double disc_patch_integral(const TestFunction& f, const IsometryOptions& opts) {
  const GaussRule rule = gauss_legendre(opts.disc_radial_order);
  const double rho = opts.patch_radius;
  double total = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = 0.5 * rho * (1.0 + rule.nodes[i]);
    double ring = 0.0;
    for (int j = 0; j < opts.disc_angular_nodes; ++j) {
      const double g = f.grad_norm(std::polar(r, 2.0 * std::numbers::pi * j / opts.disc_angular_nodes));
      ring += g * g;
    }
    total += 0.5 * rho * rule.weights[i] * r * ring * 2.0 * std::numbers::pi / opts.disc_angular_nodes;
  }
  return total;
}

}  // namespace

IsometryResult isometry_check(const ConformalPair& pair, const TestFunction& f, const IsometryOptions& opts) {
  if (!(opts.patch_radius > 0.0 && opts.patch_radius < 1.0)) {
    throw DomainError("isometry_check: patch radius must lie in (0, 1)");
  }
  if (opts.rays < 8 || opts.march_samples < 4 || opts.ray_order < 2) {
    throw DomainError("isometry_check: mesh too coarse");
  }
  ForwardPatch patch(pair, f, opts);
  IsometryResult res;
  res.omega_side = std::sqrt(patch.integrate());
  res.disc_side = std::sqrt(disc_patch_integral(f, opts));
  res.ratio = res.omega_side / res.disc_side;
  return res;
}

bool DualityResult::holds() const {
  if (!verdicts_agree()) return false;
  if (lhs.classification == TailClass::inconclusive) return false;
  return !both_converge() || rel_diff <= kDualityTolerance;
}

DualityResult duality_check(const ConformalPair& pair, double p, double q, const GradingSpec& spec) {
  if (!(1.0 < q && q < p && std::isfinite(p))) {
    throw DomainError("duality_check: requires 1 < q < p < inf, got p=" + num(p) + " q=" + num(q));
  }
  DualityResult res;
  res.exponents = dual_pair(p, q);
  const double qc = res.exponents.q_conj;
  const double pc = res.exponents.p_conj;
  const auto angles = pair.singular_angles();

  // (|psi'|^{q'} / |psi'|^2)^{p'/(q'-p')}
  const double outer_l = pc / (qc - pc);
  res.lhs = integrate_disc(
      [&](cplx w) {
        const double log_d = std::log(std::abs(pair.dpsi_unchecked(w)));
        return std::exp(outer_l * (qc * log_d - 2.0 * log_d));
      },
      angles, spec);

  // (|phi'|^p / J(phi))^{q/(p-q)} at z = psi(w), times the Jacobian |psi'|^2,
  // with |phi'(psi(w))| = 1 / |psi'(w)|.
  const double outer_r = q / (p - q);
  res.rhs = integrate_disc(
      [&](cplx w) {
        const double log_d = std::log(std::abs(pair.dpsi_unchecked(w)));
        const double log_phi = -log_d;
        const double log_jphi = 2.0 * log_phi;
        return std::exp(outer_r * (p * log_phi - log_jphi) + 2.0 * log_d);
      },
      angles, spec);

  res.rel_diff = kNaN;
  if (res.both_converge()) {
    res.rel_diff = std::abs(res.lhs.value - res.rhs.value) / std::max(std::abs(res.lhs.value), std::abs(res.rhs.value));
  }
  return res;
}

bool EquivalenceTable::all_finite() const {
  return std::all_of(rows.begin(), rows.end(), [](const EquivalenceRow& r) { return r.kpq.finite(); });
}

bool EquivalenceTable::all_diverging() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const EquivalenceRow& r) { return r.kpq.integral.classification == TailClass::diverging; });
}

double EquivalenceTable::integral_spread() const {
  if (rows.empty() || !all_finite()) return kNaN;
  double lo = kInf;
  double hi = -kInf;
  for (const auto& r : rows) {
    lo = std::min(lo, r.kpq.integral.value);
    hi = std::max(hi, r.kpq.integral.value);
  }
  return (hi - lo) / std::max(std::abs(hi), std::abs(lo));
}

bool EquivalenceTable::q_below_p() const {
  return std::all_of(rows.begin(), rows.end(), [](const EquivalenceRow& r) { return r.q < r.p; });
}

bool EquivalenceTable::bounds_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const EquivalenceRow& r) { return r.ratios.bound_holds(); });
}

EquivalenceTable equivalence_table(const ConformalPair& pair, double s, const std::vector<double>& p_grid,
                                   const std::vector<TestFunction>& family, const GradingSpec& spec) {
  if (!(s > 0.0)) throw DomainError("equivalence_table: s must be > 0");
  if (p_grid.empty()) throw DomainError("equivalence_table: empty p grid");
  for (double p : p_grid) {
    if (!(p > 2.0 && std::isfinite(p))) throw DomainError("equivalence_table: every p must lie in (2, inf), got " + num(p));
  }

  EquivalenceTable table;
  table.map = pair.descriptor();
  table.s = s;
  for (double p : p_grid) {
    EquivalenceRow row;
    row.p = p;
    row.q = q_from_ps(Exponent(p), s);
    row.s_recovered = s_from_pq(Exponent(p), row.q);
    row.kpq = kpq_functional(pair, Exponent(p), row.q, spec);
    std::vector<TestFunction> admissible;
    for (const auto& f : family) {
      if (f.admissible(p)) admissible.push_back(f);
    }
    row.ratios = norm_ratio_report(pair, p, row.q, admissible, spec);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace brennan
