#pragma once

// Integration over the unit disc for integrands with power-type singularities
// at finitely many boundary points.
//
// The disc is cut into annuli [1 - eps_k, 1 - eps_{k+1}] with eps_k =
// annulus_ratio^k down to eps_min. Each annulus is integrated with a tensor
// Gauss-Legendre rule in polar coordinates. Angular panels are graded
// geometrically toward every declared singular direction, starting at the
// annulus gap, so a point singularity looks the same in every annulus.
// Whether the integral is finite is decided from the decay of the last
// annulus contributions, never from the magnitude of the sum.

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace brennan {

struct GradingSpec {
  double eps_min = 1e-8;
  double annulus_ratio = 0.5;
  int radial_order = 16;
  // Gauss nodes per full turn for the uniform part of the angular mesh.
  int angular_base = 64;
  // Node density multiplier within kBoostZone radians of a singular direction.
  int angular_boost = 8;

  // Throws DomainError on non-positive fields or annulus_ratio >= 1.
  void validate() const;
};

inline constexpr double kBoostZone = 0.1;

// Decay exponent below which annulus contributions count as not decaying.
inline constexpr double kDivergenceSlope = 0.005;

// Number of trailing annulus contributions used for the tail fit.
inline constexpr int kTailWindow = 5;

enum class TailClass { converged, diverging, inconclusive };

const char* to_string(TailClass c);

struct IntegralEstimate {
  // Truncated sum plus the extrapolated tail when converged; the truncated
  // sum alone otherwise.
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double truncation_eps = 0.0;
  // Extrapolated mass beyond truncation_eps; +inf when diverging.
  double tail_estimate = 0.0;
  TailClass classification = TailClass::inconclusive;
  // Fitted exponent a in contribution_k ~ eps_k^a; a <= kDivergenceSlope
  // means divergence.
  double decay_exponent = 0.0;
  std::vector<double> annulus_contributions;

  bool converged() const { return classification == TailClass::converged; }
};

using DiscIntegrand = std::function<double(std::complex<double>)>;

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule (n >= 1).
GaussRule gauss_legendre(int n);

IntegralEstimate integrate_disc(const DiscIntegrand& g, std::span<const double> singular_angles,
                                const GradingSpec& spec = {});

// Integral over |w| <= 1 - eps with the same graded scheme stopped at eps.
double integrate_truncated(const DiscIntegrand& g, double eps, std::span<const double> singular_angles = {},
                           const GradingSpec& spec = {});

struct TailVerdict {
  TailClass classification;
  // Least-squares slope of log|increment per unit log(1/eps)| against
  // log(1/eps): positive or zero means the increments do not shrink.
  double slope;
};

// samples are (eps, value) pairs with strictly decreasing eps; at least 4.
TailVerdict classify_tail(std::span<const std::pair<double, double>> samples);

}  // namespace brennan
