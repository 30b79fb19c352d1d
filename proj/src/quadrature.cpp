#include "brennan/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "brennan/errors.hpp"

namespace brennan {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Neumaier compensated sum; accumulation order is the call order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Angular panel [u_a, u_b] measured from direction `dir`.
struct AngularPanel {
  cplx dir;
  double u_a;
  double u_b;
};

cplx unit_direction(double theta) {
  double c = std::cos(theta);
  double s = std::sin(theta);
  if (std::abs(c) < 1e-15) c = 0.0;
  if (std::abs(s) < 1e-15) s = 0.0;
  return {c, s};
}

int uniform_panel_count(const GradingSpec& spec) {
  return std::max(2, (spec.angular_base + spec.radial_order - 1) / spec.radial_order);
}

std::vector<AngularPanel> angular_panels(std::span<const double> singular_angles, double gap,
                                         const GradingSpec& spec) {
  const int uniform = uniform_panel_count(spec);
  const double uniform_width = kTwoPi / uniform;
  std::vector<AngularPanel> panels;

  std::vector<double> angles;
  angles.reserve(singular_angles.size());
  for (double a : singular_angles) {
    double t = std::fmod(a, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    angles.push_back(t);
  }
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end(),
                           [](double x, double y) { return std::abs(x - y) < 1e-14; }),
               angles.end());

  if (angles.empty()) {
    for (int m = 0; m < uniform; ++m) panels.push_back({{1.0, 0.0}, m * uniform_width, (m + 1) * uniform_width});
    return panels;
  }

  const std::size_t n = angles.size();
  const double boost_step = uniform_width / std::max(1, spec.angular_boost);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = angles[i];
    double left = std::numbers::pi;
    double right = std::numbers::pi;
    if (n > 1) {
      const double prev = i == 0 ? angles[n - 1] - kTwoPi : angles[i - 1];
      const double next = i + 1 == n ? angles[0] + kTwoPi : angles[i + 1];
      left = 0.5 * (theta - prev);
      right = 0.5 * (next - theta);
    }

    std::vector<double> cuts{-left, 0.0, right};
    for (double d = gap; d < right; d *= 2.0) cuts.push_back(d);
    for (double d = gap; d < left; d *= 2.0) cuts.push_back(-d);
    for (double d = boost_step; d < std::min(kBoostZone, right); d += boost_step) cuts.push_back(d);
    for (double d = boost_step; d < std::min(kBoostZone, left); d += boost_step) cuts.push_back(-d);
    for (int m = 0; m < uniform; ++m) {
      const double u = std::remainder(m * uniform_width - theta, kTwoPi);
      if (-left < u && u < right) cuts.push_back(u);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double x, double y) {
                             return std::abs(y - x) <= 1e-14 * std::max(std::abs(x), std::abs(y));
                           }),
               cuts.end());

    const cplx dir = unit_direction(theta);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) panels.push_back({dir, cuts[k], cuts[k + 1]});
  }
  return panels;
}

std::string node_string(cplx w) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", w.real(), w.imag());
  return buf;
}

// Integral of g over the annulus r in [1 - gap_outer, 1 - gap_inner] (with
// gap_outer = 1 meaning the full disc of radius 1 - gap_inner).
double integrate_annulus(const DiscIntegrand& g, double gap_outer, double gap_inner,
                         std::span<const double> singular_angles, const GradingSpec& spec,
                         const GaussRule& rule) {
  const auto panels = angular_panels(singular_angles, gap_inner, spec);

  std::vector<cplx> ang_nodes;
  std::vector<double> ang_weights;
  ang_nodes.reserve(panels.size() * rule.nodes.size());
  ang_weights.reserve(panels.size() * rule.nodes.size());
  for (const auto& p : panels) {
    const double half = 0.5 * (p.u_b - p.u_a);
    const double mid = 0.5 * (p.u_b + p.u_a);
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double u = mid + half * rule.nodes[j];
      ang_nodes.push_back(p.dir * cplx(std::cos(u), std::sin(u)));
      ang_weights.push_back(half * rule.weights[j]);
    }
  }

  CompensatedSum total;
  const double half_gap = 0.5 * (gap_outer - gap_inner);
  const double mid_gap = 0.5 * (gap_outer + gap_inner);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double gap = mid_gap + half_gap * rule.nodes[i];
    const double r = 1.0 - gap;
    CompensatedSum ring;
    for (std::size_t j = 0; j < ang_nodes.size(); ++j) {
      const cplx w = r * ang_nodes[j];
      const double v = g(w);
      if (!std::isfinite(v)) throw QuadratureError("integrand is not finite at node " + node_string(w));
      ring.add(ang_weights[j] * v);
    }
    total.add(half_gap * rule.weights[i] * r * ring.value());
  }
  return total.value();
}

int annulus_count(const GradingSpec& spec) {
  return static_cast<int>(std::ceil(std::log(spec.eps_min) / std::log(spec.annulus_ratio) - 1e-9));
}

}  // namespace

void GradingSpec::validate() const {
  if (!(eps_min > 0.0 && eps_min < 0.5)) throw DomainError("grading: eps_min must lie in (0, 0.5)");
  if (!(annulus_ratio > 0.0 && annulus_ratio < 1.0)) throw DomainError("grading: annulus_ratio must lie in (0, 1)");
  if (radial_order < 1) throw DomainError("grading: radial_order must be positive");
  if (angular_base < 1) throw DomainError("grading: angular_base must be positive");
  if (angular_boost < 1) throw DomainError("grading: angular_boost must be positive");
}

const char* to_string(TailClass c) {
  switch (c) {
    case TailClass::converged: return "converged";
    case TailClass::diverging: return "diverging";
    case TailClass::inconclusive: return "inconclusive";
  }
  return "unknown";
}

GaussRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

TailVerdict classify_tail(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 4) throw QuadratureError("classify_tail: need at least 4 samples");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (!(samples[i + 1].first < samples[i].first) || !(samples[i + 1].first > 0.0)) {
      throw QuadratureError("classify_tail: eps must be positive and strictly decreasing");
    }
  }

  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::abs(s.second));

  const std::size_t m = samples.size() - 1;
  std::vector<double> rate(m);
  std::vector<double> x(m);
  int positive = 0;
  int negative = 0;
  bool negligible = true;
  for (std::size_t i = 0; i < m; ++i) {
    const auto [e0, v0] = samples[i];
    const auto [e1, v1] = samples[i + 1];
    const double step = std::log(e0 / e1);
    rate[i] = (v1 - v0) / step;
    x[i] = -0.5 * (std::log(e0) + std::log(e1));
    if (rate[i] > 0.0) ++positive;
    if (rate[i] < 0.0) ++negative;
    if (std::abs(rate[i]) > 1e-13 * scale + std::numeric_limits<double>::min()) negligible = false;
  }
  if (negligible) return {TailClass::converged, 0.0};
  if (positive > 0 && negative > 0) return {TailClass::inconclusive, 0.0};

  // log|rate| = c + slope * log(1/eps)
  std::vector<double> y(m);
  for (std::size_t i = 0; i < m; ++i) y[i] = std::log(std::abs(rate[i]));
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = y[i] - (my + slope * (x[i] - mx));
    rss += r * r;
  }
  const double rms = std::sqrt(rss / m);
  if (!std::isfinite(slope) || rms > 0.25) return {TailClass::inconclusive, slope};
  return {-slope > kDivergenceSlope ? TailClass::converged : TailClass::diverging, slope};
}

IntegralEstimate integrate_disc(const DiscIntegrand& g, std::span<const double> singular_angles,
                                const GradingSpec& spec) {
  spec.validate();
  const int annuli = annulus_count(spec);
  if (annuli < kTailWindow + 1) {
    throw QuadratureError("integrate_disc: eps_min too large for a tail fit over " +
                          std::to_string(kTailWindow) + " annuli");
  }
  const GaussRule rule = gauss_legendre(spec.radial_order);

  IntegralEstimate est;
  est.annulus_contributions.resize(annuli);
  for (int k = 0; k < annuli; ++k) {
    const double outer = std::pow(spec.annulus_ratio, k);
    const double inner = std::pow(spec.annulus_ratio, k + 1);
    est.annulus_contributions[k] = integrate_annulus(g, outer, inner, singular_angles, spec, rule);
  }
  est.truncation_eps = std::pow(spec.annulus_ratio, annuli);

  CompensatedSum partial;
  std::vector<std::pair<double, double>> window;
  double abs_sum = 0.0;
  for (int k = 0; k < annuli; ++k) {
    partial.add(est.annulus_contributions[k]);
    abs_sum += std::abs(est.annulus_contributions[k]);
    if (k >= annuli - kTailWindow - 1) window.emplace_back(std::pow(spec.annulus_ratio, k + 1), partial.value());
  }
  const double truncated = partial.value();
  const double roundoff = 4.0 * annuli * std::numeric_limits<double>::epsilon() * abs_sum;

  const TailVerdict verdict = classify_tail(window);
  est.classification = verdict.classification;
  est.decay_exponent = -verdict.slope;

  const double last = est.annulus_contributions[annuli - 1];
  auto geometric_tail = [&](double decay) {
    if (last == 0.0 || !(decay > 0.0)) return 0.0;
    const double rho = std::pow(spec.annulus_ratio, decay);
    return last * rho / (1.0 - rho);
  };

  switch (est.classification) {
    case TailClass::converged: {
      est.tail_estimate = geometric_tail(est.decay_exponent);
      double short_decay = est.decay_exponent;
      const double before = est.annulus_contributions[annuli - 3];
      if (before != 0.0 && last != 0.0 && (last > 0.0) == (before > 0.0)) {
        short_decay = std::log(last / before) / (2.0 * std::log(spec.annulus_ratio));
      }
      est.value = truncated + est.tail_estimate;
      est.abs_error_estimate = std::abs(est.tail_estimate - geometric_tail(short_decay)) + roundoff;
      break;
    }
    case TailClass::diverging:
      est.value = truncated;
      est.tail_estimate = std::numeric_limits<double>::infinity();
      est.abs_error_estimate = roundoff;
      break;
    case TailClass::inconclusive:
      est.value = truncated;
      est.tail_estimate = std::numeric_limits<double>::quiet_NaN();
      est.abs_error_estimate = std::numeric_limits<double>::quiet_NaN();
      break;
  }
  return est;
}

double integrate_truncated(const DiscIntegrand& g, double eps, std::span<const double> singular_angles,
                           const GradingSpec& spec) {
  spec.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("integrate_truncated: eps must lie in (0, 1)");
  const GaussRule rule = gauss_legendre(spec.radial_order);
  CompensatedSum total;
  double outer = 1.0;
  while (outer > eps) {
    const double inner = std::max(outer * spec.annulus_ratio, eps);
    total.add(integrate_annulus(g, outer, inner, singular_angles, spec, rule));
    outer = inner;
  }
  return total.value();
}

}  // namespace brennan
