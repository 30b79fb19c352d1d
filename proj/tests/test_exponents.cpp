#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "brennan/errors.hpp"
#include "brennan/exponents.hpp"

using namespace brennan;

TEST_CASE("q(p,s) examples") {
  CHECK(q_from_ps(4.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(q_from_ps(3.0, 3.0) == doctest::Approx(9.0 / 4.0).epsilon(1e-15));
  CHECK(q_from_ps(Exponent::infinity(), 2.7) == 2.7);
  CHECK_THROWS_AS(q_from_ps(2.0, 3.0), DomainError);
  CHECK_THROWS_AS(q_from_ps(4.0, 0.0), DomainError);
}

TEST_CASE("s(p,q) examples") {
  CHECK(s_from_pq(4.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s_from_pq(Exponent::infinity(), 1.5) == 1.5);
  CHECK_THROWS_AS(s_from_pq(3.0, 3.0), DomainError);
  CHECK_THROWS_AS(s_from_pq(3.0, 4.0), DomainError);
}

TEST_CASE("holder conjugate") {
  CHECK(holder_conjugate(2.0).value() == 2.0);
  CHECK(holder_conjugate(4.0).value() == doctest::Approx(4.0 / 3.0));
  CHECK(holder_conjugate(Exponent::infinity()).value() == 1.0);
  CHECK_THROWS_AS(holder_conjugate(1.0), DomainError);
}

TEST_CASE("alpha range") {
  const auto a3 = alpha_range(3.0);
  CHECK(a3.lo == doctest::Approx(4.0 / 3.0));
  CHECK(a3.hi == doctest::Approx(4.0));
  const auto a4 = alpha_range(4.0);
  CHECK(a4.lo == doctest::Approx(2.0 / 3.0));
  CHECK(a4.hi == doctest::Approx(2.0));
  CHECK_THROWS_AS(alpha_range(2.0), DomainError);
  const auto neg = alpha_range(1.5);
  CHECK(neg.lo == doctest::Approx(-8.0));
  CHECK(neg.hi == doctest::Approx(-8.0 / 3.0));
}

TEST_CASE("alpha range is the Brennan range scaled by 1/(p-2)") {
  for (double p = 2.1; p < 20.0; p += 0.37) {
    const auto a = alpha_range(p);
    CHECK(a.lo * (p - 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(a.hi * (p - 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  }
}

TEST_CASE("known bounds are ordered") {
  const auto b = known_bounds();
  CHECK(b.easy_upper < b.pommerenke);
  CHECK(b.pommerenke < b.bertilsson);
  CHECK(b.bertilsson < b.hedenmalm_shimorin);
  CHECK(b.hedenmalm_shimorin < b.brennan_conjectured.hi);
  CHECK(b.inverse_conjectured.lo < b.inverse_proved_lower);
  CHECK(brennan_range().lo == doctest::Approx(4.0 / 3.0));
  CHECK(inverse_range().hi == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("round trip s -> q -> s") {
  for (double p = 2.05; p < 30.0; p *= 1.3) {
    for (double s = 0.1; s < 12.0; s += 0.29) {
      const double q = q_from_ps(p, s);
      CHECK(q < p);
      CHECK(q > 0.0);
      if (q < 1.0) continue;
      CHECK(s_from_pq(p, q) == doctest::Approx(s).epsilon(1e-12));
    }
  }
}

TEST_CASE("q(p,s) is increasing in s and q(p,s) < p") {
  for (double p : {2.5, 3.0, 4.0, 10.0}) {
    double prev = 0.0;
    for (double s = 0.05; s < 20.0; s += 0.05) {
      const double q = q_from_ps(p, s);
      CHECK(q > prev);
      CHECK(q < p);
      prev = q;
    }
  }
}

TEST_CASE("dual exponent identity on a 25-point grid") {
  int cells = 0;
  for (double p : {1.5, 2.5, 3.0, 4.0, 8.0}) {
    for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double q = 1.0 + frac * (p - 1.0);
      const auto d = dual_pair(p, q);
      const double closed = p * (2.0 - q) / (p - q);
      CHECK(std::abs(d.shared_exponent - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
      const double lhs = (d.q_conj - 2.0) * d.p_conj / (d.q_conj - d.p_conj);
      CHECK(std::abs(lhs - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
      ++cells;
    }
  }
  CHECK(cells == 25);
  CHECK_THROWS_AS(dual_pair(3.0, 3.0), DomainError);
  CHECK_THROWS_AS(dual_pair(3.0, 1.0), DomainError);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(2.0, 2.0) == Regime::isometry);
  CHECK(classify_regime(4.0, 2.0) == Regime::bounded_candidate);
  CHECK(classify_regime(3.0, 3.0) == Regime::degenerate_equal);
  CHECK(classify_regime(2.0, 3.0) == Regime::unbounded_regime);
  CHECK(classify_regime(Exponent::infinity(), 1.0) == Regime::sup_norm);
}

TEST_CASE("exponent record") {
  const auto rec = make_record(4.0, 2.0);
  REQUIRE(rec.q);
  CHECK(*rec.q == doctest::Approx(2.0));
  CHECK(*rec.r == doctest::Approx(0.0));
  CHECK(*rec.alpha == doctest::Approx(1.0));
  CHECK(rec.p_conj->value() == doctest::Approx(4.0 / 3.0));
  CHECK(rec.q_conj->value() == doctest::Approx(2.0));
  CHECK_THROWS_AS(make_record(2.0, 1.0), DomainError);
}

TEST_CASE("exponent parsing") {
  CHECK(Exponent::parse("inf").is_infinite());
  CHECK(Exponent::parse("3.5").value() == 3.5);
  CHECK_THROWS_AS(Exponent::parse("abc"), DomainError);
  CHECK_THROWS_AS(Exponent::infinity().value(), DomainError);
}
