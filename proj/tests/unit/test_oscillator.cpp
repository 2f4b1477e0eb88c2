#include <doctest.h>

#include <cmath>

#include "mixbound/errors.hpp"
#include "mixbound/oscillator_basis.hpp"
#include "mixbound/spectrum.hpp"

using namespace mixbound;

TEST_CASE("mode functions") {
  const OscillatorBasis b(1.0, 4);
  CHECK(b.mode_function(0, 0.0) == doctest::Approx(std::pow(M_PI, -0.25)).epsilon(1e-15));
  CHECK(b.mode_function(1, 0.0) == 0.0);
  // psi_2(x) = (2x^2 - 1) / sqrt(2) * psi_0(x)
  const double x = 0.7;
  CHECK(b.mode_function(2, x) ==
        doctest::Approx((2 * x * x - 1) / std::sqrt(2.0) * b.mode_function(0, x)).epsilon(1e-14));
  CHECK(b.mode_function(3, -x) == doctest::Approx(-b.mode_function(3, x)));
  CHECK_THROWS_AS(b.mode_function(5, 0.0), RangeError);
  CHECK_THROWS_AS(OscillatorBasis(0.0, 3), DomainError);
}

TEST_CASE("tabulation agrees with pointwise evaluation") {
  const OscillatorBasis b(1.7, 9);
  const Axis axis = Axis::symmetric(6.0, 61);
  const auto tab = b.tabulate(axis);
  for (int n = 0; n <= 9; ++n)
    for (int i = 0; i < axis.points; i += 7)
      CHECK(tab[n * axis.points + i] == doctest::Approx(b.mode_function(n, axis.at(i))).epsilon(1e-13));
}

TEST_CASE("orthonormality on the default grid") {
  for (double k : {1.0, 0.6, 2.0}) {
    const Eigen::MatrixXd g = OscillatorBasis(k, 12).overlap(default_axis(1, k));
    CHECK((g - Eigen::MatrixXd::Identity(13, 13)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("axis") {
  const Axis a = Axis::symmetric(2.0, 5);
  CHECK(a.step() == 1.0);
  CHECK(a.at(4) == 2.0);
  CHECK(a.trapezoid_weight(0) == 0.5);
  CHECK_THROWS_AS(Axis::symmetric(-1.0, 5), DomainError);
  CHECK_THROWS_AS(Axis::symmetric(1.0, 1), DomainError);
}

TEST_CASE("density grid reproduces analytic moments (s = 1)") {
  for (double n : {1.0, 2.0, 3.7}) {
    const ModeSpectrum sp = build_spectrum(1, n);
    const Moments exact = spectrum_moments(sp);
    const DensityMatrixGrid g = build_density_grid(sp, default_axis(1, 1.0), 1);
    CHECK(std::abs(g.trace() - 1.0) < 1e-10);
    CHECK(g.symmetry_residual() < 1e-14);
    for (auto route : {MomentumRoute::spectral, MomentumRoute::finite_difference}) {
      const QuadratureMoments q = quadrature_moments(g, route, 1);
      CHECK(q.delta_x == doctest::Approx(exact.delta_x).epsilon(1e-8));
      CHECK(q.delta_q == doctest::Approx(exact.delta_q).epsilon(1e-6));
      CHECK(q.n_eff == doctest::Approx(n).epsilon(1e-8));
    }
  }
}

TEST_CASE("scaled density grid") {
  const double k = 1.8;
  const ModeSpectrum sp = build_spectrum(1, 2.5, k);
  const QuadratureMoments q = quadrature_moments(build_density_grid(sp, default_axis(1, k), 1));
  const Moments exact = spectrum_moments(sp);
  CHECK(q.delta_x == doctest::Approx(exact.delta_x).epsilon(1e-8));
  CHECK(q.delta_q == doctest::Approx(exact.delta_q).epsilon(1e-8));
}

TEST_CASE("two-dimensional grid symmetries") {
  const ModeSpectrum sp = build_spectrum(2, 3.0);
  const DensityMatrixGrid g = build_density_grid(sp, default_axis(2, 1.0), 2);
  CHECK(g.sites() == 41u * 41u);
  CHECK(std::abs(g.trace() - 1.0) < 1e-6);
  CHECK(g.swap_symmetry_residual() < 1e-10);
  CHECK(g.symmetry_residual() < 1e-12);
  const QuadratureMoments q = quadrature_moments(g);
  CHECK(q.n_eff == doctest::Approx(3.0).epsilon(1e-4));
}

TEST_CASE("grid too narrow for the occupied shells") {
  const ModeSpectrum sp = build_spectrum(1, 10.0);
  CHECK_THROWS_AS(build_density_grid(sp, Axis::symmetric(2.0, 101), 1), DomainError);
}
