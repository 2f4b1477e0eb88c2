#include <doctest.h>

#include <cmath>

#include "mixbound/bounds.hpp"
#include "mixbound/errors.hpp"

using namespace mixbound;

TEST_CASE("strict bound goldens") {
  CHECK(strict_bound(1, 1.5).bound == doctest::Approx(1.0 - 1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-14));
  CHECK(strict_bound(1, 2.0).bound ==
        doctest::Approx(1.5 - std::sqrt(8.0) / (2.0 * std::sqrt(6.0))).epsilon(1e-14));
  CHECK(strict_bound(2, 3.0).bound == doctest::Approx(0.7939886704167017).epsilon(1e-14));
  for (int s : {1, 2, 3, 5, 10}) {
    CHECK(std::abs(strict_bound(s, 1.0).bound - 0.5) <= 1e-14);
    CHECK(strict_bound(s, 1.0).packing == doctest::Approx(1.0));
  }
}

TEST_CASE("approximate bound goldens") {
  const ApproxBound a = approx_bound(1, 1.5);
  CHECK(a.l_tilde == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-12));
  CHECK(a.bound == doctest::Approx((1.0 + 2.0 * a.l_tilde) / 6.0).epsilon(1e-14));
  CHECK(approx_bound(1, 2.0).l_tilde == doctest::Approx((5.0 + std::sqrt(73.0)) / 6.0).epsilon(1e-12));
  CHECK(approx_bound(3, 1.0).bound == doctest::Approx(0.5));
  CHECK(approx_bound(2, 50.0).residual < 1e-10);
}

TEST_CASE("approximate bound tracks the strict one") {
  for (int s = 1; s <= 3; ++s)
    for (double n : {1.1, 2.0, 7.5, 40.0}) {
      const double rel = std::abs(approx_bound(s, n).bound / strict_bound(s, n).bound - 1.0);
      CHECK(rel < 0.06);
    }
}

TEST_CASE("layer equation bracket limit") {
  CHECK_THROWS_AS(approx_bound(1, 1e6, 10.0), RangeError);
  CHECK_THROWS_AS(approx_bound(1, 0.9), DomainError);
}

TEST_CASE("max_neff inverts the smooth boundary") {
  CHECK(max_neff(1, 0.5) == 1.0);
  CHECK(max_neff(3, 0.5) == 1.0);
  CHECK(max_neff(1, 0.706011329584) == doctest::Approx(1.5).epsilon(1e-10));
  for (int s = 1; s <= 3; ++s)
    for (double n : {1.2, 3.3, 77.0}) CHECK(max_neff(s, approx_bound(s, n).bound) == doctest::Approx(n).epsilon(1e-10));
  CHECK_THROWS_AS(max_neff(1, 0.4999), DomainError);
}

TEST_CASE("asymptotic packing") {
  CHECK(asymptotic_packing(1) == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(asymptotic_packing(2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(asymptotic_packing(3) == doctest::Approx(0.6144).epsilon(1e-15));
  CHECK(asymptotic_packing(2) <= asymptotic_packing(1) * asymptotic_packing(1));
}

TEST_CASE("neff grid") {
  const auto lin = neff_grid(1.0, 3.0, 3, false);
  REQUIRE(lin.size() == 3);
  CHECK(lin[1] == 2.0);
  const auto lg = neff_grid(1.0, 1e4, 5, true);
  CHECK(lg.front() == 1.0);
  CHECK(lg.back() == 1e4);
  CHECK(lg[2] == doctest::Approx(100.0));
  CHECK(neff_grid(5.0, 5.0, 1, true).size() == 1);
  CHECK_THROWS_AS(neff_grid(2.0, 1.0, 4, false), DomainError);
  CHECK_THROWS_AS(neff_grid(0.5, 2.0, 4, false), DomainError);
  CHECK_THROWS_AS(neff_grid(1.0, 2.0, 1, false), DomainError);
}

TEST_CASE("packing curve is thread-count independent") {
  CurveRequest req;
  req.dimensions = {1, 3};
  req.n_eff_min = 1.0;
  req.n_eff_max = 500.0;
  req.points = 37;
  req.log_spacing = true;
  req.threads = 1;
  const auto a = packing_curve(req);
  req.threads = 4;
  const auto b = packing_curve(req);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].n_eff == b[i].n_eff);
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(a[i].columns[j].strict_packing == b[i].columns[j].strict_packing);
      CHECK(a[i].columns[j].layers == b[i].columns[j].layers);
    }
  }
  CHECK(a.front().columns[0].strict_packing == 1.0);
  CHECK(a.front().columns[1].approx_packing == doctest::Approx(1.0));
}
