#include "brennan/exponents.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "brennan/errors.hpp"

namespace brennan {

namespace {

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= kExponentTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

double Exponent::value() const {
  if (infinite_) throw DomainError("exponent is infinite; no finite value");
  return value_;
}

std::string Exponent::to_string() const { return infinite_ ? "inf" : fmt(value_); }

Exponent Exponent::parse(const std::string& text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "oo") return infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw DomainError("not an exponent: '" + text + "'");
  }
  if (pos != text.size() || !std::isfinite(v)) throw DomainError("not an exponent: '" + text + "'");
  return Exponent(v);
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::isometry: return "isometry";
    case Regime::bounded_candidate: return "bounded-candidate";
    case Regime::degenerate_equal: return "degenerate-equal";
    case Regime::unbounded_regime: return "unbounded-regime";
    case Regime::sup_norm: return "sup-norm";
  }
  return "unknown";
}

double q_from_ps(Exponent p, double s) {
  if (!(s > 0.0)) throw DomainError("q_from_ps: s must be > 0, got " + fmt(s));
  if (p.is_infinite()) return s;
  const double pv = p.value();
  if (!(pv > 2.0)) {
    throw DomainError("q_from_ps: p must lie in (2, inf), got " + fmt(pv) +
                      " (the restriction p > 2 is sharp)");
  }
  // p + s - 2 > s > 0, hence 0 < q < p.
  return pv * s / (pv + s - 2.0);
}

double s_from_pq(Exponent p, double q) {
  if (!(q >= 1.0)) throw DomainError("s_from_pq: q must be >= 1, got " + fmt(q));
  if (p.is_infinite()) return q;
  const double pv = p.value();
  if (!(q < pv)) {
    throw DomainError("s_from_pq: requires q < p, got p=" + fmt(pv) + " q=" + fmt(q));
  }
  return (pv - 2.0) * q / (pv - q);
}

Exponent holder_conjugate(Exponent p) {
  if (p.is_infinite()) return Exponent(1.0);
  const double pv = p.value();
  if (!(pv > 1.0)) throw DomainError("holder_conjugate: p must be > 1, got " + fmt(pv));
  return Exponent(pv / (pv - 1.0));
}

DualPair dual_pair(double p, double q) {
  if (!(1.0 < q && q < p && std::isfinite(p))) {
    throw DomainError("dual_pair: requires 1 < q < p < inf, got p=" + fmt(p) + " q=" + fmt(q));
  }
  const double q_conj = q / (q - 1.0);
  const double p_conj = p / (p - 1.0);
  const double via_conjugates = (q_conj - 2.0) * p_conj / (q_conj - p_conj);
  const double direct = p * (2.0 - q) / (p - q);
  if (!nearly_equal(via_conjugates, direct)) {
    throw std::logic_error("dual_pair: exponent identity violated: " + fmt(via_conjugates) +
                           " vs " + fmt(direct));
  }
  return {q_conj, p_conj, direct};
}

OpenInterval alpha_range(double p) {
  if (!(p >= 1.0)) throw DomainError("alpha_range: p must be >= 1, got " + fmt(p));
  if (p == 2.0) throw DomainError("alpha_range: undefined at p = 2");
  if (p > 2.0) return {4.0 / (3.0 * (p - 2.0)), 4.0 / (p - 2.0)};
  return {-4.0 / (2.0 - p), -4.0 / (3.0 * (2.0 - p))};
}

OpenInterval brennan_range() { return known_bounds().brennan_conjectured; }

OpenInterval inverse_range() { return known_bounds().inverse_conjectured; }

KnownBounds known_bounds() { return KnownBounds{}; }

Regime classify_regime(Exponent p, double q) {
  if (p.is_infinite()) return Regime::sup_norm;
  const double pv = p.value();
  if (!(pv >= 1.0 && q >= 1.0)) {
    throw DomainError("classify_regime: p and q must be >= 1, got p=" + fmt(pv) + " q=" + fmt(q));
  }
  if (nearly_equal(pv, q)) return nearly_equal(pv, 2.0) ? Regime::isometry : Regime::degenerate_equal;
  return q < pv ? Regime::bounded_candidate : Regime::unbounded_regime;
}

ExponentRecord make_record(Exponent p, double s) {
  ExponentRecord rec{p, {}, {}, {}, {}, {}, {}};
  const double q = q_from_ps(p, s);
  rec.q = q;
  rec.s = s;
  rec.r = 2.0 - s;
  if (p.is_finite()) rec.alpha = s / (p.value() - 2.0);
  rec.p_conj = holder_conjugate(p);
  if (q > 1.0) rec.q_conj = holder_conjugate(Exponent(q));
  return rec;
}

}  // namespace brennan
