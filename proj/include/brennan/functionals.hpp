#pragma once

// Brennan's integral, its inverse form, the K_{p,q} distortion functional
// and empirical critical exponents for catalog maps.
//
// Every Omega-side integral is pulled back to the disc:
//   int_Omega |phi'|^s dmu = int_D |psi'|^{2-s} dw.

#include <optional>
#include <string>
#include <vector>

#include "brennan/catalog.hpp"
#include "brennan/exponents.hpp"
#include "brennan/quadrature.hpp"

namespace brennan {

enum class FunctionalKind { brennan, inverse_brennan, kpq };

const char* to_string(FunctionalKind k);

struct FunctionalResult {
  FunctionalKind kind = FunctionalKind::brennan;
  std::string map;
  // Brennan exponent s of the integrand |phi'|^s (r = 2 - s on the disc).
  double s = 0.0;
  Exponent p = Exponent::infinity();  // kpq only
  double q = 0.0;                     // kpq only
  IntegralEstimate integral;
  // integral^{(p-q)/(pq)}; +inf when the integral diverges, NaN when not a
  // kpq result or the classification is inconclusive.
  double kpq_value = 0.0;

  double r() const { return 2.0 - s; }
  bool finite() const { return integral.converged(); }
};

// |psi'|^t as a disc integrand.
DiscIntegrand derivative_power(const ConformalPair& pair, double t);

// K_p(z, phi) = |phi'(z)|^{p-2}, via Newton inversion of psi.
double p_distortion(const ConformalPair& pair, cplx z, double p);

FunctionalResult brennan_integral(const ConformalPair& pair, double s, const GradingSpec& spec = {});

FunctionalResult inverse_brennan_integral(const ConformalPair& pair, double r, const GradingSpec& spec = {});

// K_{p,q}(phi; Omega) for 1 <= q < p, p in (2, inf].
FunctionalResult kpq_functional(const ConformalPair& pair, Exponent p, double q, const GradingSpec& spec = {});

// Brennan integrals at s = from, from + step, ... <= to. Probes run
// concurrently; results are returned in s order.
std::vector<FunctionalResult> brennan_scan(const ConformalPair& pair, double from, double to, double step,
                                           const GradingSpec& spec = {});

enum class Side { upper, lower };

const char* to_string(Side s);
Side parse_side(const std::string& text);

struct Probe {
  double s;
  TailClass classification;
  double decay_exponent;
};

struct CriticalExponentReport {
  std::string map;
  Side side = Side::upper;
  // False when the far end of the search bracket still converges: the map
  // has no threshold on this side within [-6, 12].
  bool bounded = true;
  double s_star = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<Probe> probes;
};

inline constexpr double kLowerSearchStart = -6.0;
inline constexpr double kUpperSearchEnd = 12.0;

// Bisection on s over [2, 12] (upper) or [-6, 2] (lower) using the
// convergence verdict of brennan_integral. tol >= 0.01. An inconclusive probe
// is retried once with eps_min reduced 1000-fold (not below 1e-12); a second failure throws
// QuadratureError.
CriticalExponentReport critical_exponent(const ConformalPair& pair, Side side, double tol = 0.01,
                                         const GradingSpec& spec = {});

struct Thresholds {
  std::optional<double> lower;
  std::optional<double> upper;
};

// Closed-form integrability range of Brennan's integral from the declared
// singular exponents: (2 - s) e > -2 at every singular point.
Thresholds threshold_oracle(const ConformalPair& pair);

}  // namespace brennan
