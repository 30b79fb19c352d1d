#pragma once

// Numerical checks of the conformal composition theorems with closed-form
// Sobolev test functions on the unit disc.

#include <string>
#include <variant>
#include <vector>

#include "brennan/catalog.hpp"
#include "brennan/exponents.hpp"
#include "brennan/functionals.hpp"
#include "brennan/quadrature.hpp"

namespace brennan {

// f = Re w^k
struct HarmonicPoly {
  int k;
};
// f = (1 - |w|^2)^gamma
struct BoundaryPower {
  double gamma;
};
// f = log|w - 2|
struct ShiftedLog {};

class TestFunction {
 public:
  using Kind = std::variant<HarmonicPoly, BoundaryPower, ShiftedLog>;

  explicit TestFunction(Kind kind);

  double value(cplx w) const;
  // |grad f|(w), hand-derived.
  double grad_norm(cplx w) const;
  // Whether grad f lies in L^p(D).
  bool admissible(double p) const;
  std::string descriptor() const;

  const Kind& kind() const { return kind_; }

 private:
  Kind kind_;
};

// Accepts harmonic_poly:k, boundary_power:gamma, shifted_log.
TestFunction parse_test_function(const std::string& text);

// harmonic_poly(1..4), boundary_power(0.9, 1.5, 3), shifted_log.
std::vector<TestFunction> standard_family();

// harmonic_poly(2), boundary_power(1.5), shifted_log.
std::vector<TestFunction> isometry_family();

// (int_D |grad f|^p)^{1/p}. Throws InadmissibleFunction when f is not
// admissible for p or the integral does not converge.
double seminorm(const TestFunction& f, double p, const GradingSpec& spec = {});

struct PullbackSeminorm {
  // +inf when the integral diverges.
  double value;
  IntegralEstimate integral;
};

// ||grad(f o phi)||_{L^q(Omega)} = (int_D |grad f|^q |psi'|^{2-q} dw)^{1/q}.
PullbackSeminorm pullback_seminorm(const ConformalPair& pair, const TestFunction& f, double q,
                                   const GradingSpec& spec = {});

inline constexpr double kRatioTolerance = 1e-4;

struct RatioSample {
  std::string function;
  double seminorm_p;
  double pullback_seminorm_q;
  double ratio;
};

struct NormRatioReport {
  std::string map;
  double p = 0.0;
  double q = 0.0;
  double bound_kpq = 0.0;  // +inf when K_{p,q} diverges
  TailClass bound_classification = TailClass::inconclusive;
  double bound_integral = 0.0;
  std::vector<RatioSample> samples;
  double max_ratio = 0.0;

  bool bound_finite() const { return bound_classification == TailClass::converged; }
  // max_ratio <= bound (1 + kRatioTolerance); vacuous when the bound is
  // infinite.
  bool bound_holds() const;
};

// Requires 1 <= q < p, 2 < p < inf, and a nonempty family admissible for p.
NormRatioReport norm_ratio_report(const ConformalPair& pair, double p, double q,
                                  const std::vector<TestFunction>& family, const GradingSpec& spec = {});

struct IsometryOptions {
  double patch_radius = 0.8;
  int rays = 256;
  int march_samples = 64;
  int ray_order = 48;
  int disc_radial_order = 48;
  int disc_angular_nodes = 256;
};

struct IsometryResult {
  // L^2 seminorm of f o phi over psi(patch), integrated in z.
  double omega_side;
  // L^2 seminorm of f over the patch |w| <= patch_radius.
  double disc_side;
  double ratio;
};

// Compares the two sides of the p = 2 isometry on a forward-mapped patch.
// The Omega side is integrated in polar coordinates about psi(0): each ray
// is marched through a sample grid of Newton-inverted points to locate the
// patch boundary, and |grad(f o phi)|^2 is formed by central differences of
// the numerically inverted composition. No pullback identity is used.
IsometryResult isometry_check(const ConformalPair& pair, const TestFunction& f, const IsometryOptions& opts = {});

struct DualityResult {
  DualPair exponents;
  // int_D (|psi'|^{q'} / J(psi))^{p'/(q'-p')} dw
  IntegralEstimate lhs;
  // int_Omega (|phi'|^p / J(phi))^{q/(p-q)} dmu, evaluated through psi
  IntegralEstimate rhs;
  double rel_diff;  // NaN unless both converge

  bool both_converge() const { return lhs.converged() && rhs.converged(); }
  bool verdicts_agree() const { return lhs.classification == rhs.classification; }
  bool holds() const;
};

inline constexpr double kDualityTolerance = 1e-3;

DualityResult duality_check(const ConformalPair& pair, double p, double q, const GradingSpec& spec = {});

struct EquivalenceRow {
  double p;
  double q;
  double s_recovered;
  FunctionalResult kpq;
  NormRatioReport ratios;
};

struct EquivalenceTable {
  std::string map;
  double s = 0.0;
  std::vector<EquivalenceRow> rows;

  bool all_finite() const;
  bool all_diverging() const;
  // Relative spread of the Brennan integral across rows (NaN if any row is
  // not converged).
  double integral_spread() const;
  bool q_below_p() const;
  bool bounds_hold() const;
};

inline constexpr double kEquivalenceSpread = 1e-10;

EquivalenceTable equivalence_table(const ConformalPair& pair, double s, const std::vector<double>& p_grid,
                                   const std::vector<TestFunction>& family, const GradingSpec& spec = {});

}  // namespace brennan
