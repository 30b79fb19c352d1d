#pragma once

// Scalar exponent arithmetic for Brennan's integral and conformal composition
// operators L^1_p(D) -> L^1_q(Omega).
//
// All comparisons use an absolute tolerance of kExponentTol. The value p = inf
// is carried symbolically by Exponent, never as a large double.

#include <optional>
#include <string>

namespace brennan {

inline constexpr double kExponentTol = 1e-12;

class Exponent {
 public:
  constexpr Exponent(double v) : value_(v), infinite_(false) {}  // NOLINT(google-explicit-constructor)

  static constexpr Exponent infinity() { return Exponent(); }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }

  // Throws DomainError when infinite.
  double value() const;

  std::string to_string() const;

  // Accepts a decimal number or one of "inf", "infinity", "oo".
  static Exponent parse(const std::string& text);

  friend constexpr bool operator==(Exponent a, Exponent b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }

 private:
  constexpr Exponent() : value_(0.0), infinite_(true) {}

  double value_;
  bool infinite_;
};

struct OpenInterval {
  double lo;
  double hi;

  bool contains(double x) const { return lo < x && x < hi; }
};

enum class Regime {
  isometry,           // p = q = 2
  bounded_candidate,  // q < p, finite p
  degenerate_equal,   // q = p != 2
  unbounded_regime,   // q > p
  sup_norm,           // p = inf
};

const char* to_string(Regime r);

struct KnownBounds {
  double easy_upper = 3.0;
  OpenInterval brennan_conjectured{4.0 / 3.0, 4.0};
  double pommerenke = 3.399;
  double bertilsson = 3.421;
  // Stored as a bound on s; the original statement uses the letter p.
  double hedenmalm_shimorin = 3.752;
  double inverse_proved_lower = -1.78;
  OpenInterval inverse_conjectured{-2.0, 2.0 / 3.0};
};

// Target exponent of the composition operator L^1_p(D) -> L^1_q(Omega) that
// corresponds to Brennan exponent s: q = ps/(p+s-2). q(inf, s) = s.
double q_from_ps(Exponent p, double s);

// Brennan exponent (p-2)q/(p-q) read off the composition criterion.
// s_from_pq(inf, q) = q.
double s_from_pq(Exponent p, double q);

// p/(p-1) for p > 1, with conjugate(inf) = 1.
Exponent holder_conjugate(Exponent p);

struct DualPair {
  double q_conj;
  double p_conj;
  // Exponent on |psi'| shared by both integrals of the inverse composition
  // criterion: (q'-2)p'/(q'-p') == p(2-q)/(p-q).
  double shared_exponent;
};

// Exponents of the inverse operator L^1_{q'}(Omega) -> L^1_{p'}(Omega').
// Requires 1 < q < p < inf. Throws std::logic_error if the two closed forms
// of the shared exponent disagree beyond kExponentTol (relative).
DualPair dual_pair(double p, double q);

// Degrees alpha for which the p-distortion |phi'|^{p-2} is conjecturally
// integrable. Exposed exactly as printed, including the negative 1 <= p < 2
// branch.
OpenInterval alpha_range(double p);

OpenInterval brennan_range();
OpenInterval inverse_range();
KnownBounds known_bounds();

Regime classify_regime(Exponent p, double q);

// Full exponent bookkeeping for one (p, s) pair.
struct ExponentRecord {
  Exponent p;
  std::optional<double> q;
  std::optional<double> s;
  std::optional<double> r;
  std::optional<double> alpha;
  std::optional<Exponent> p_conj;
  std::optional<Exponent> q_conj;
};

// Builds the record for p > 2 (or inf) and s > 0: q = q(p,s), r = 2 - s,
// alpha = s/(p-2) (finite p), and the Hoelder conjugates.
ExponentRecord make_record(Exponent p, double s);

}  // namespace brennan
