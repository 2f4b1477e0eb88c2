#include <doctest.h>

#include <cmath>

#include "mixbound/errors.hpp"
#include "mixbound/shells.hpp"

using namespace mixbound;

TEST_CASE("degeneracy of low shells") {
  CHECK(degeneracy(1, 0) == 1);
  CHECK(degeneracy(1, 7) == 1);
  CHECK(degeneracy(2, 3) == 4);
  CHECK(degeneracy(3, 2) == 6);
  CHECK(degeneracy(3, 4) == 15);
}

TEST_CASE("mode counts") {
  CHECK(mode_count(1, 5) == 5);
  CHECK(mode_count(2, 2) == 3);
  CHECK(mode_count(2, 4) == 10);
  CHECK(mode_count(3, 3) == 10);
  for (int s = 1; s <= 6; ++s) {
    Count running = 0;
    for (int L = 1; L <= 30; ++L) {
      running += degeneracy(s, L - 1);
      CHECK(mode_count(s, L) == running);
    }
  }
}

TEST_CASE("binomial overflow is reported, not wrapped") {
  CHECK(try_binomial(60, 30).has_value());
  CHECK(*try_binomial(60, 30) == 118264581564861424ULL);
  CHECK_FALSE(try_binomial(70, 35).has_value());
  CHECK_THROWS_AS(mode_count(40, 100), OverflowError);
  CHECK_FALSE(try_mode_count(40, 100).has_value());
}

TEST_CASE("log_gamma") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  CHECK(std::exp(log_gamma(11.0)) == doctest::Approx(3628800.0).epsilon(1e-13));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
}

TEST_CASE("log rising factorial matches gamma ratio") {
  for (double x : {0.3, 1.0, 2.7, 15.25}) {
    for (int n : {0, 1, 3, 8}) {
      CHECK(log_rising_factorial(x, n) ==
            doctest::Approx(log_gamma(x + n) - log_gamma(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("ShellTable") {
  const ShellTable t(3, 10);
  CHECK(t.dimension() == 3);
  CHECK(t.max_shell() == 10);
  CHECK(t.degeneracy(4) == 15);
  CHECK(t.cumulative(1) == 1);
  CHECK(t.cumulative(3) == 10);
  CHECK(t.degeneracies().size() == 11);
  CHECK_THROWS_AS(t.degeneracy(11), RangeError);
  CHECK_THROWS_AS(t.cumulative(0), RangeError);
  CHECK_THROWS_AS(ShellTable(0), DomainError);
}
