#include <doctest.h>

#include <cmath>

#include "mixbound/bounds.hpp"
#include "mixbound/errors.hpp"
#include "mixbound/shells.hpp"
#include "mixbound/spectrum.hpp"

using namespace mixbound;

TEST_CASE("admissible layers") {
  CHECK(admissible_layers(1, 1.0).lo == 1);
  CHECK(admissible_layers(1, 1.0).hi == 1);
  const LayerRange r2 = admissible_layers(1, 2.0);
  CHECK(r2.lo == 2);
  CHECK(r2.hi == 3);
  const LayerRange r3 = admissible_layers(2, 3.0);
  CHECK(r3.lo == 2);
  CHECK(r3.hi == 3);
  CHECK_THROWS_AS(admissible_layers(1, 0.5), DomainError);
  CHECK_THROWS_AS(admissible_layers(0, 2.0), DomainError);
}

TEST_CASE("layer selection picks the smallest bound") {
  for (int s = 1; s <= 3; ++s) {
    for (double n : {1.3, 2.0, 5.5, 17.0, 123.4}) {
      LayerRange r;
      const auto L = select_layer(s, n, r);
      CHECK(r.contains(L));
      const double best = bound_at_layer(s, n, L);
      for (auto l = r.lo; l <= r.hi; ++l) CHECK(bound_at_layer(s, n, l) >= best * (1 - 1e-14));
    }
  }
}

TEST_CASE("two-shell spectrum at n_eff = 1.5") {
  const ModeSpectrum sp = build_spectrum(1, 1.5);
  REQUIRE(sp.shell_weight.size() == 2);
  CHECK(sp.shell_weight[0] == doctest::Approx(0.5 + 0.5 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(sp.shell_weight[1] == doctest::Approx(0.5 - 0.5 / std::sqrt(3.0)).epsilon(1e-14));
}

TEST_CASE("pure state") {
  for (int s : {1, 2, 5}) {
    const ModeSpectrum sp = build_spectrum(s, 1.0);
    CHECK(sp.layers == 1);
    REQUIRE(sp.shell_weight.size() == 1);
    CHECK(sp.shell_weight[0] == 1.0);
    CHECK(spectrum_moments(sp).product() == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("uniform spectrum when n_eff fills L shells") {
  const ModeSpectrum sp = build_spectrum_at_layer(2, 3.0, 2);
  for (double w : sp.shell_weight) CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("spectrum invariants and moments") {
  for (int s = 1; s <= 3; ++s) {
    for (double n : {1.01, 1.7, 3.0, 9.9, 60.0, 199.0}) {
      const ModeSpectrum sp = build_spectrum(s, n);
      CHECK(std::abs(sp.trace_residual()) < 1e-10);
      CHECK(std::abs(sp.purity_residual()) < 1e-10);
      for (std::size_t m = 1; m < sp.shell_weight.size(); ++m)
        CHECK(sp.shell_weight[m] <= sp.shell_weight[m - 1]);
      const Moments mo = spectrum_moments(sp);
      CHECK(mo.n_eff == doctest::Approx(n).epsilon(1e-12));
      CHECK(mo.product() == doctest::Approx(strict_bound(s, n).bound).epsilon(1e-13));
    }
  }
}

TEST_CASE("scale factor trades dx for dq") {
  const Moments a = spectrum_moments(build_spectrum(2, 4.0, 1.0));
  const Moments b = spectrum_moments(build_spectrum(2, 4.0, 2.5));
  CHECK(b.delta_x == doctest::Approx(a.delta_x / 2.5));
  CHECK(b.delta_q == doctest::Approx(a.delta_q * 2.5));
  CHECK(b.product() == doctest::Approx(a.product()).epsilon(1e-14));
}

TEST_CASE("inadmissible layer is rejected") {
  CHECK_THROWS_AS(build_spectrum_at_layer(1, 2.0, 5), DomainError);
  CHECK_THROWS_AS(build_spectrum(1, 2.0, 0.0), DomainError);
  CHECK_THROWS_AS(build_spectrum(1, std::nan("")), DomainError);
}

TEST_CASE("request helpers") {
  const auto r = SpectrumRequest::from_mu(2, 0.25);
  CHECK(r.s == 2);
  CHECK(r.n_eff == 4.0);
  CHECK(r.mu() == 0.25);
  CHECK_THROWS_AS(SpectrumRequest::from_mu(1, 0.0), DomainError);
}
