#include "brennan/catalog.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "brennan/errors.hpp"

namespace brennan {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Shortest of %.15g / %.17g that round-trips.
std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  if (std::strtod(buf, nullptr) != x) std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void require_in_disc(cplx w, const char* what) {
  if (!(std::abs(w) < 1.0)) {
    throw DomainError(std::string(what) + ": |w| must be < 1, got |w| = " + num(std::abs(w)));
  }
}

void require_automorphism(cplx a) {
  if (!(std::abs(a) < 1.0)) {
    throw DomainError("moebius: |a| must be < 1, got |a| = " + num(std::abs(a)));
  }
}

std::string automorphism_string(const Automorphism& m) {
  return "moebius:" + num(m.a.real()) + "," + num(m.a.imag()) + "," + num(m.theta);
}

cplx base_psi(const BaseMap& base, cplx w) {
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return w; },
          [&](const MoebiusMap& m) { return m.m(w); },
          [&](const KoebeMap&) { return w / ((1.0 - w) * (1.0 - w)); },
          [&](const SectorMap& s) { return std::pow((1.0 - w) / (1.0 + w), s.beta); },
          [&](const CardioidMap&) { return w - 0.5 * w * w; },
      },
      base);
}

cplx base_dpsi(const BaseMap& base, cplx w) {
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return cplx{1.0, 0.0}; },
          [&](const MoebiusMap& m) { return m.m.derivative(w); },
          [&](const KoebeMap&) {
            const cplx d = 1.0 - w;
            return (1.0 + w) / (d * d * d);
          },
          [&](const SectorMap& s) {
            const cplx u = (1.0 - w) / (1.0 + w);
            return -2.0 * s.beta * std::pow(u, s.beta - 1.0) / ((1.0 + w) * (1.0 + w));
          },
          [&](const CardioidMap&) { return 1.0 - w; },
      },
      base);
}

std::vector<SingularPoint> base_singular(const BaseMap& base) {
  return std::visit(
      overloaded{
          [](const IdentityMap&) { return std::vector<SingularPoint>{}; },
          [](const MoebiusMap&) { return std::vector<SingularPoint>{}; },
          [](const KoebeMap&) {
            return std::vector<SingularPoint>{{{1.0, 0.0}, -3.0}, {{-1.0, 0.0}, 1.0}};
          },
          [](const SectorMap& s) {
            std::vector<SingularPoint> pts;
            if (s.beta != 1.0) pts.push_back({{1.0, 0.0}, s.beta - 1.0});
            pts.push_back({{-1.0, 0.0}, -(s.beta + 1.0)});
            return pts;
          },
          [](const CardioidMap&) { return std::vector<SingularPoint>{{{1.0, 0.0}, 1.0}}; },
      },
      base);
}

}  // namespace

cplx Automorphism::operator()(cplx w) const {
  return std::polar(1.0, theta) * (w - a) / (1.0 - std::conj(a) * w);
}

cplx Automorphism::derivative(cplx w) const {
  const cplx d = 1.0 - std::conj(a) * w;
  return std::polar(1.0, theta) * (1.0 - std::norm(a)) / (d * d);
}

cplx Automorphism::inverse(cplx z) const {
  const cplx u = z * std::polar(1.0, -theta);
  return (u + a) / (1.0 + std::conj(a) * u);
}

ConformalPair::ConformalPair(BaseMap base) : base_(std::move(base)), singular_(base_singular(base_)) {
  if (const auto* s = std::get_if<SectorMap>(&base_)) {
    if (!(s->beta > 0.0 && s->beta <= 2.0)) {
      throw DomainError("sector: beta must lie in (0, 2], got " + num(s->beta));
    }
  }
  if (const auto* m = std::get_if<MoebiusMap>(&base_)) require_automorphism(m->m.a);
}

cplx ConformalPair::pre_apply(cplx w, cplx* chain) const {
  cplx d{1.0, 0.0};
  for (auto it = pre_.rbegin(); it != pre_.rend(); ++it) {
    d *= it->derivative(w);
    w = (*it)(w);
  }
  if (chain) *chain = d;
  return w;
}

cplx ConformalPair::psi_unchecked(cplx w) const { return base_psi(base_, pre_apply(w, nullptr)); }

cplx ConformalPair::dpsi_unchecked(cplx w) const {
  cplx chain;
  const cplx v = pre_apply(w, &chain);
  return base_dpsi(base_, v) * chain;
}

cplx ConformalPair::psi(cplx w) const {
  require_in_disc(w, "psi");
  return psi_unchecked(w);
}

cplx ConformalPair::dpsi(cplx w) const {
  require_in_disc(w, "dpsi");
  return dpsi_unchecked(w);
}

bool ConformalPair::in_domain(cplx z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return std::visit(
      overloaded{
          [&](const IdentityMap&) { return std::abs(z) < 1.0; },
          [&](const MoebiusMap&) { return std::abs(z) < 1.0; },
          [&](const KoebeMap&) { return !(z.imag() == 0.0 && z.real() <= -0.25); },
          [&](const SectorMap& s) {
            return z != cplx{0.0, 0.0} && std::abs(std::arg(z)) < s.beta * std::numbers::pi / 2.0;
          },
          [&](const CardioidMap&) { return std::abs(1.0 - std::sqrt(1.0 - 2.0 * z)) < 1.0; },
      },
      base_);
}

std::vector<double> ConformalPair::singular_angles() const {
  std::vector<double> out;
  out.reserve(singular_.size());
  for (const auto& p : singular_) out.push_back(std::arg(p.w0));
  return out;
}

std::string ConformalPair::descriptor() const {
  std::string s = std::visit(overloaded{
                                 [](const IdentityMap&) { return std::string("identity"); },
                                 [](const MoebiusMap& m) { return automorphism_string(m.m); },
                                 [](const KoebeMap&) { return std::string("koebe"); },
                                 [](const SectorMap& m) { return "sector:" + num(m.beta); },
                                 [](const CardioidMap&) { return std::string("cardioid"); },
                             },
                             base_);
  for (const auto& m : pre_) s += "*" + automorphism_string(m);
  return s;
}

ConformalPair make_identity() { return ConformalPair(IdentityMap{}); }
ConformalPair make_moebius(cplx a, double theta) { return ConformalPair(MoebiusMap{{a, theta}}); }
ConformalPair make_koebe() { return ConformalPair(KoebeMap{}); }
ConformalPair make_sector(double beta) { return ConformalPair(SectorMap{beta}); }
ConformalPair make_cardioid() { return ConformalPair(CardioidMap{}); }

ConformalPair compose_with_moebius(const ConformalPair& pair, cplx a, double theta) {
  require_automorphism(a);
  ConformalPair out = pair;
  const Automorphism m{a, theta};
  out.pre_.push_back(m);
  for (auto& p : out.singular_) p.w0 = m.inverse(p.w0);
  return out;
}

namespace {

std::vector<double> parse_numbers(std::string_view args, std::string_view what) {
  std::vector<double> out;
  std::string token;
  std::stringstream ss{std::string(args)};
  while (std::getline(ss, token, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      throw DomainError("map descriptor: bad number '" + token + "' in " + std::string(what));
    }
    if (pos != token.size() || !std::isfinite(v)) {
      throw DomainError("map descriptor: bad number '" + token + "' in " + std::string(what));
    }
    out.push_back(v);
  }
  return out;
}

Automorphism parse_automorphism(std::string_view args, std::string_view token) {
  const auto v = parse_numbers(args, token);
  if (v.size() != 3) {
    throw DomainError("map descriptor: moebius takes a_re,a_im,theta, got '" + std::string(token) + "'");
  }
  return {{v[0], v[1]}, v[2]};
}

ConformalPair parse_base(std::string_view token) {
  const auto colon = token.find(':');
  const std::string_view name = token.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : token.substr(colon + 1);
  const bool has_args = colon != std::string_view::npos;

  if (name == "identity" && !has_args) return make_identity();
  if (name == "koebe" && !has_args) return make_koebe();
  if (name == "cardioid" && !has_args) return make_cardioid();
  if (name == "moebius" && has_args) {
    const auto m = parse_automorphism(args, token);
    return make_moebius(m.a, m.theta);
  }
  if (name == "sector" && has_args) {
    const auto v = parse_numbers(args, token);
    if (v.size() != 1) throw DomainError("map descriptor: sector takes one beta, got '" + std::string(token) + "'");
    return make_sector(v[0]);
  }
  throw DomainError("unknown map descriptor '" + std::string(token) + "'");
}

}  // namespace

ConformalPair parse_map(std::string_view text) {
  if (text.empty()) throw DomainError("empty map descriptor");
  std::size_t start = 0;
  std::size_t star = text.find('*');
  ConformalPair pair = parse_base(text.substr(0, star));
  while (star != std::string_view::npos) {
    start = star + 1;
    star = text.find('*', start);
    const std::string_view token = text.substr(start, star == std::string_view::npos ? star : star - start);
    if (token.substr(0, 8) != "moebius:") {
      throw DomainError("map descriptor: only moebius may follow '*', got '" + std::string(token) + "'");
    }
    const auto m = parse_automorphism(token.substr(8), token);
    pair = compose_with_moebius(pair, m.a, m.theta);
  }
  return pair;
}

namespace {

// One damped Newton run; returns true on convergence.
bool newton_from(const ConformalPair& pair, cplx z, cplx seed, const InversionOptions& opts, cplx& out) {
  const double tol = opts.residual_tol * (1.0 + std::abs(z));
  cplx w = seed;
  cplx f = pair.psi_unchecked(w) - z;
  double res = std::abs(f);
  for (int it = 0; it < opts.max_iterations; ++it) {
    if (res <= tol) {
      out = w;
      return true;
    }
    const cplx d = pair.dpsi_unchecked(w);
    if (d == cplx{0.0, 0.0} || !std::isfinite(std::abs(d))) return false;
    const cplx step = f / d;
    double lambda = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      const cplx trial = w - lambda * step;
      if (!(std::abs(trial) < 1.0)) continue;
      const cplx ft = pair.psi_unchecked(trial) - z;
      const double rt = std::abs(ft);
      if (std::isfinite(rt) && (rt < res || rt <= tol)) {
        w = trial;
        f = ft;
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) return false;
  }
  if (res <= tol) {
    out = w;
    return true;
  }
  return false;
}

}  // namespace

cplx invert_map(const ConformalPair& pair, cplx z, cplx seed, const InversionOptions& opts) {
  if (!pair.in_domain(z)) {
    throw DomainError("invert_map: z = " + num(z.real()) + (z.imag() < 0 ? "" : "+") + num(z.imag()) +
                      "i is outside the domain of " + pair.descriptor());
  }
  if (!(std::abs(seed) < 1.0)) throw DomainError("invert_map: seed must lie inside the unit disc");

  std::array<cplx, 10> seeds;
  seeds[0] = seed;
  seeds[1] = 0.0;
  for (int k = 0; k < 8; ++k) seeds[2 + k] = std::polar(0.5, k * std::numbers::pi / 4.0);

  cplx w;
  for (const cplx s : seeds) {
    if (newton_from(pair, z, s, opts, w)) return w;
  }
  throw ConvergenceError("invert_map: Newton iteration did not converge for z = " + num(z.real()) + "," +
                         num(z.imag()) + " on " + pair.descriptor());
}

std::vector<ConformalPair> standard_catalog() {
  return {
      make_identity(),
      make_moebius({0.3, -0.2}, 0.7),
      make_koebe(),
      make_sector(0.5),
      make_sector(1.25),
      make_sector(1.5),
      make_sector(2.0),
      make_cardioid(),
      compose_with_moebius(make_cardioid(), {0.25, 0.25}, 0.4),
  };
}

}  // namespace brennan
