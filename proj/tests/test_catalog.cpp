#include <doctest.h>

#include <cmath>
#include <numbers>

#include "brennan/catalog.hpp"
#include "brennan/errors.hpp"

using namespace brennan;

namespace {

std::vector<cplx> interior_grid(double rmax) {
  std::vector<cplx> pts;
  for (int i = 1; i <= 8; ++i) {
    const double r = rmax * i / 8.0;
    for (int j = 0; j < 24; ++j) pts.push_back(std::polar(r, 2.0 * std::numbers::pi * (j + 0.5) / 24.0));
  }
  pts.push_back(0.0);
  return pts;
}

}  // namespace

TEST_CASE("closed-form values") {
  const auto k = make_koebe();
  CHECK(std::abs(k.psi(0.5) - cplx(2.0)) < 1e-15);
  CHECK(std::abs(k.dpsi(0.0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(k.psi(-1.0 + 1e-9) - cplx(-0.25)) < 1e-8);

  const auto c = make_cardioid();
  CHECK(std::abs(c.psi(0.5) - cplx(0.375)) < 1e-15);
  CHECK(std::abs(c.dpsi(0.5) - cplx(0.5)) < 1e-15);

  const auto sq = make_sector(1.0);
  CHECK(std::abs(sq.psi(0.0) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(sq.psi(1.0 / 3.0) - cplx(0.5)) < 1e-15);

  const auto id = make_identity();
  CHECK(id.psi(cplx(0.3, -0.4)) == cplx(0.3, -0.4));
  CHECK(id.singular_points().empty());

  const auto m = make_moebius(cplx(0.5, 0.0), 0.0);
  CHECK(std::abs(m.psi(0.5)) < 1e-15);
  CHECK(std::abs(m.psi(0.0) - cplx(-0.5)) < 1e-15);
}

TEST_CASE("psi rejects points outside the disc") {
  const auto k = make_koebe();
  CHECK_THROWS_AS(k.psi(1.0), DomainError);
  CHECK_THROWS_AS(k.dpsi(cplx(0.0, 1.2)), DomainError);
}

TEST_CASE("singular points of the base maps") {
  const auto k = make_koebe();
  REQUIRE(k.singular_points().size() == 2);
  const auto s = make_sector(1.0);
  REQUIRE(s.singular_points().size() == 1);  // beta - 1 = 0 at w = 1 is dropped
  CHECK(s.singular_points()[0].exponent == doctest::Approx(-2.0));
  CHECK_THROWS_AS(make_sector(0.0), DomainError);
  CHECK_THROWS_AS(make_sector(2.5), DomainError);
}

TEST_CASE("descriptor parsing") {
  CHECK(parse_map("koebe").descriptor() == "koebe");
  CHECK(parse_map("sector:1.5").descriptor() == "sector:1.5");
  CHECK(parse_map("cardioid*moebius:0.25,0.25,0.4").descriptor() == "cardioid*moebius:0.25,0.25,0.4");
  CHECK_THROWS_AS(parse_map("koebe2"), DomainError);
  CHECK_THROWS_AS(parse_map("sector:"), DomainError);
  CHECK_THROWS_AS(parse_map("koebe*sector:1"), DomainError);
  CHECK_THROWS_AS(parse_map("moebius:1.5,0,0"), DomainError);
  CHECK_THROWS_AS(parse_map(""), DomainError);
  for (const auto& pair : standard_catalog()) {
    CHECK(parse_map(pair.descriptor()).descriptor() == pair.descriptor());
  }
}

TEST_CASE("derivative matches finite differences and Cauchy-Riemann") {
  const double h = 1e-6;
  for (const auto& pair : standard_catalog()) {
    CAPTURE(pair.descriptor());
    for (cplx w : interior_grid(0.9)) {
      const cplx d = pair.dpsi(w);
      const cplx dx = (pair.psi(w + h) - pair.psi(w - h)) / (2.0 * h);
      const cplx dy = (pair.psi(w + cplx(0, h)) - pair.psi(w - cplx(0, h))) / (2.0 * h);
      CHECK(std::abs(dx - d) <= 1e-6 * std::abs(d));
      // u_x = v_y, u_y = -v_x
      CHECK(std::abs(dx.real() - dy.imag()) <= 1e-6 * std::abs(d));
      CHECK(std::abs(dy.real() + dx.imag()) <= 1e-6 * std::abs(d));
    }
  }
}

TEST_CASE("derivative never vanishes") {
  for (const auto& pair : standard_catalog()) {
    CAPTURE(pair.descriptor());
    for (cplx w : interior_grid(0.99)) CHECK(std::abs(pair.dpsi(w)) > 1e-8);
  }
}

TEST_CASE("images lie in the declared domain") {
  for (const auto& pair : standard_catalog()) {
    CAPTURE(pair.descriptor());
    for (cplx w : interior_grid(0.98)) CHECK(pair.in_domain(pair.psi(w)));
  }
  const auto k = make_koebe();
  CHECK_FALSE(k.in_domain(-0.3));
  CHECK(k.in_domain(cplx(-0.3, 1e-3)));
  const auto s = make_sector(0.5);
  CHECK_FALSE(s.in_domain(cplx(-1.0, 0.1)));
  CHECK_FALSE(make_cardioid().in_domain(2.0));
}

TEST_CASE("inversion round trip for |w| <= 0.95") {
  for (const auto& pair : standard_catalog()) {
    CAPTURE(pair.descriptor());
    for (cplx w : interior_grid(0.95)) {
      const cplx z = pair.psi(w);
      const cplx back = invert_map(pair, z);
      CHECK(std::abs(back - w) <= 1e-10);
    }
  }
}

TEST_CASE("inversion outside the domain throws") {
  CHECK_THROWS_AS(invert_map(make_koebe(), -1.0), DomainError);
  CHECK_THROWS_AS(invert_map(make_identity(), 1.5), DomainError);
}

TEST_CASE("declared singular exponents match the radial slope of |psi'|") {
  for (const auto& pair : standard_catalog()) {
    for (const auto& pt : pair.singular_points()) {
      CAPTURE(pair.descriptor());
      CAPTURE(pt.exponent);
      const double d1 = 1e-5;
      const double d2 = 1e-7;
      const double a1 = std::abs(pair.dpsi(pt.w0 * (1.0 - d1)));
      const double a2 = std::abs(pair.dpsi(pt.w0 * (1.0 - d2)));
      const double slope = std::log(a1 / a2) / std::log(d1 / d2);
      CHECK(slope == doctest::Approx(pt.exponent).epsilon(1e-3));
    }
  }
}

TEST_CASE("composition moves singular points by the inverse automorphism") {
  const auto base = make_koebe();
  const Automorphism m{cplx(0.3, -0.2), 0.7};
  const auto comp = compose_with_moebius(base, m.a, m.theta);
  REQUIRE(comp.singular_points().size() == base.singular_points().size());
  for (std::size_t i = 0; i < comp.singular_points().size(); ++i) {
    CHECK(std::abs(m(comp.singular_points()[i].w0) - base.singular_points()[i].w0) < 1e-12);
    CHECK(comp.singular_points()[i].exponent == base.singular_points()[i].exponent);
  }
  const cplx w(0.1, 0.4);
  CHECK(std::abs(comp.psi(w) - base.psi(m(w))) < 1e-12);
  CHECK(std::abs(comp.dpsi(w) - base.dpsi(m(w)) * m.derivative(w)) < 1e-12);
}

TEST_CASE("automorphism inverse") {
  const Automorphism m{cplx(-0.4, 0.5), 2.1};
  for (cplx w : interior_grid(0.97)) CHECK(std::abs(m.inverse(m(w)) - w) < 1e-13);
}
