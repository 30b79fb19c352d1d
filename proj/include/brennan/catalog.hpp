#pragma once

// Closed-form conformal pairs psi: D -> Omega with derivative. The forward
// Riemann map phi = psi^{-1} is only realized numerically (invert_map).
//
// Descriptor mini-language:
//   identity | moebius:a_re,a_im,theta | koebe | sector:beta | cardioid
// optionally followed by one or more "*moebius:a_re,a_im,theta" factors,
// meaning psi o m.

#include <complex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace brennan {

using cplx = std::complex<double>;

// Disc automorphism m(w) = e^{i theta} (w - a) / (1 - conj(a) w).
struct Automorphism {
  cplx a{0.0, 0.0};
  double theta = 0.0;

  cplx operator()(cplx w) const;
  cplx derivative(cplx w) const;
  cplx inverse(cplx z) const;
};

struct IdentityMap {};
struct MoebiusMap {
  Automorphism m;
};
// psi(w) = w / (1 - w)^2, Omega = C \ (-inf, -1/4].
struct KoebeMap {};
// psi(w) = ((1 - w) / (1 + w))^beta, Omega = {|arg z| < beta pi / 2}.
struct SectorMap {
  double beta;
};
// psi(w) = w - w^2 / 2.
struct CardioidMap {};

using BaseMap = std::variant<IdentityMap, MoebiusMap, KoebeMap, SectorMap, CardioidMap>;

// Boundary point w0 with |psi'(w)| ~ |w - w0|^exponent.
struct SingularPoint {
  cplx w0;
  double exponent;
};

class ConformalPair {
 public:
  explicit ConformalPair(BaseMap base);

  // psi(w); throws DomainError unless |w| < 1.
  cplx psi(cplx w) const;
  // psi'(w); throws DomainError unless |w| < 1.
  cplx dpsi(cplx w) const;

  // Unchecked evaluation, also valid on the boundary circle where finite.
  cplx psi_unchecked(cplx w) const;
  cplx dpsi_unchecked(cplx w) const;

  bool in_domain(cplx z) const;

  const std::vector<SingularPoint>& singular_points() const { return singular_; }
  std::vector<double> singular_angles() const;

  const BaseMap& base() const { return base_; }
  // Automorphisms applied before psi, innermost last: psi o m_0 o m_1 o ...
  const std::vector<Automorphism>& pre_maps() const { return pre_; }

  std::string descriptor() const;

  friend ConformalPair compose_with_moebius(const ConformalPair& pair, cplx a, double theta);

 private:
  cplx pre_apply(cplx w, cplx* chain) const;

  BaseMap base_;
  std::vector<Automorphism> pre_;
  std::vector<SingularPoint> singular_;
};

ConformalPair make_identity();
ConformalPair make_moebius(cplx a, double theta);
ConformalPair make_koebe();
ConformalPair make_sector(double beta);
ConformalPair make_cardioid();

// Returns the pair for psi o m. Singular points move to m^{-1}(w0).
ConformalPair compose_with_moebius(const ConformalPair& pair, cplx a, double theta);

// Parses the descriptor mini-language; throws DomainError on bad input.
ConformalPair parse_map(std::string_view text);

struct InversionOptions {
  int max_iterations = 100;
  double residual_tol = 1e-12;  // relative to 1 + |z|
};

// phi(z) = psi^{-1}(z) by damped Newton iteration from `seed`, retrying from
// 0 and from 8 points on |w| = 0.5. Throws DomainError if z is outside Omega
// and ConvergenceError if every seed fails.
cplx invert_map(const ConformalPair& pair, cplx z, cplx seed = {0.0, 0.0},
                const InversionOptions& opts = {});

// Maps used throughout the test and acceptance suites: all five families
// plus one Moebius composition.
std::vector<ConformalPair> standard_catalog();

}  // namespace brennan
