#include <doctest.h>

#include <cmath>
#include <numbers>

#include "brennan/catalog.hpp"
#include "brennan/errors.hpp"
#include "brennan/functionals.hpp"

using namespace brennan;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("area identity at s = 2") {
  for (const auto& pair : standard_catalog()) {
    CAPTURE(pair.descriptor());
    const auto res = brennan_integral(pair, 2.0);
    CHECK(res.finite());
    CHECK(std::abs(res.integral.value - kPi) < 1e-8);
  }
}

TEST_CASE("identity map gives pi for every s") {
  const auto id = make_identity();
  for (double s : {-5.0, 0.0, 1.0, 3.0, 11.0}) CHECK(std::abs(brennan_integral(id, s).integral.value - kPi) < 1e-12);
}

TEST_CASE("closed-form thresholds") {
  const auto k = threshold_oracle(make_koebe());
  REQUIRE(k.lower);
  REQUIRE(k.upper);
  CHECK(*k.lower == doctest::Approx(4.0 / 3.0));
  CHECK(*k.upper == doctest::Approx(4.0));
  const auto s125 = threshold_oracle(make_sector(1.25));
  CHECK(*s125.upper == doctest::Approx(10.0));
  const auto s05 = threshold_oracle(make_sector(0.5));
  CHECK_FALSE(s05.upper);
  const auto c = threshold_oracle(make_cardioid());
  CHECK_FALSE(c.lower);
  CHECK(*c.upper == doctest::Approx(4.0));
  const auto id = threshold_oracle(make_identity());
  CHECK_FALSE(id.lower);
  CHECK_FALSE(id.upper);
}

TEST_CASE("convergence verdicts straddle the koebe thresholds") {
  const auto k = make_koebe();
  CHECK(brennan_integral(k, 1.3).integral.classification == TailClass::diverging);
  CHECK(brennan_integral(k, 1.4).finite());
  CHECK(brennan_integral(k, 3.9).finite());
  CHECK(brennan_integral(k, 4.1).integral.classification == TailClass::diverging);
}

TEST_CASE("empirical critical exponents match the oracle") {
  for (const char* desc : {"koebe", "sector:1.5", "cardioid"}) {
    CAPTURE(desc);
    const auto pair = parse_map(desc);
    const auto oracle = threshold_oracle(pair);
    const auto up = critical_exponent(pair, Side::upper);
    REQUIRE(oracle.upper);
    CHECK(up.bounded);
    CHECK(std::abs(up.s_star - *oracle.upper) <= 0.05);
    CHECK(up.bracket_hi - up.bracket_lo <= 0.01);
    const auto lo = critical_exponent(pair, Side::lower);
    CHECK(lo.bounded == oracle.lower.has_value());
    if (oracle.lower) CHECK(std::abs(lo.s_star - *oracle.lower) <= 0.05);
  }
}

TEST_CASE("critical exponent input checks") {
  CHECK_THROWS_AS(critical_exponent(make_koebe(), Side::upper, 0.001), DomainError);
  CHECK(parse_side("lower") == Side::lower);
  CHECK_THROWS_AS(parse_side("both"), DomainError);
}

TEST_CASE("divergence persists past the upper threshold") {
  const auto c = make_cardioid();
  for (double s = 4.05; s <= 8.0; s += 0.5) {
    CAPTURE(s);
    CHECK(brennan_integral(c, s).integral.classification == TailClass::diverging);
  }
  const auto k = make_koebe();
  for (double s = 1.28; s >= -4.0; s -= 0.75) {
    CAPTURE(s);
    CHECK(brennan_integral(k, s).integral.classification == TailClass::diverging);
  }
}

TEST_CASE("converged values increase toward the upper threshold") {
  const auto k = make_koebe();
  double prev = 0.0;
  for (double s = 2.0; s < 4.0; s += 0.25) {
    const auto res = brennan_integral(k, s);
    REQUIRE(res.finite());
    CHECK(res.integral.value > prev);
    prev = res.integral.value;
  }
}

TEST_CASE("rotations of the disc leave the integral unchanged") {
  for (const char* desc : {"koebe", "sector:1.25", "cardioid"}) {
    CAPTURE(desc);
    const auto pair = parse_map(desc);
    const auto rotated = compose_with_moebius(pair, 0.0, 1.1);
    for (double s : {1.5, 2.5, 3.5}) {
      const auto a = brennan_integral(pair, s);
      const auto b = brennan_integral(rotated, s);
      CHECK(a.integral.classification == b.integral.classification);
      if (a.finite()) CHECK(b.integral.value == doctest::Approx(a.integral.value).epsilon(1e-7));
    }
  }
}

TEST_CASE("inverse form is the same integral at r = 2 - s") {
  const auto pair = make_koebe();
  for (double s : {1.5, 2.5, 3.5, 4.2}) {
    const auto a = brennan_integral(pair, s);
    const auto b = inverse_brennan_integral(pair, 2.0 - s);
    CHECK(b.kind == FunctionalKind::inverse_brennan);
    CHECK(b.s == a.s);
    CHECK(b.integral.value == a.integral.value);
    CHECK(b.integral.classification == a.integral.classification);
  }
}

TEST_CASE("kpq functional") {
  const auto id = make_identity();
  const auto k = kpq_functional(id, 4.0, 2.0);
  CHECK(k.kpq_value == doctest::Approx(std::pow(kPi, 0.25)).epsilon(1e-12));
  const auto kinf = kpq_functional(id, Exponent::infinity(), 2.0);
  CHECK(kinf.kpq_value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  CHECK_THROWS_AS(kpq_functional(id, 2.0, 1.5), DomainError);
  CHECK_THROWS_AS(kpq_functional(id, 4.0, 4.0), DomainError);

  // q = q(4, 4.1) on koebe sits past the upper threshold.
  const auto div = kpq_functional(make_koebe(), 4.0, 4.0 * 4.1 / 6.1);
  CHECK(div.integral.classification == TailClass::diverging);
  CHECK(std::isinf(div.kpq_value));
}

TEST_CASE("p-distortion through numerical inversion") {
  const auto k = make_koebe();
  const cplx w(0.3, 0.2);
  const double expected = std::pow(std::abs(k.dpsi(w)), -2.0);  // p = 4
  CHECK(p_distortion(k, k.psi(w), 4.0) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(p_distortion(k, k.psi(w), 2.0) == 1.0);
}

TEST_CASE("scan") {
  const auto rows = brennan_scan(make_koebe(), 1.0, 4.5, 0.5);
  REQUIRE(rows.size() == 8);
  CHECK(rows.front().integral.classification == TailClass::diverging);
  CHECK(rows.back().integral.classification == TailClass::diverging);
  for (std::size_t i = 1; i + 2 < rows.size(); ++i) CHECK(rows[i].finite());
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].s == doctest::Approx(1.0 + 0.5 * i));
  CHECK_THROWS_AS(brennan_scan(make_koebe(), 2.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(brennan_scan(make_koebe(), 1.0, 2.0, 0.0), DomainError);
}
