#include <doctest.h>

#include <cmath>
#include <vector>

#include "mixbound/bounds.hpp"
#include "mixbound/errors.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/spectrum.hpp"

using namespace mixbound;

TEST_CASE("shell oracle finds the strict bound") {
  for (int s = 1; s <= 3; ++s) {
    for (double n : {1.0, 1.5, 3.0}) {
      const auto sol = oracle::minimize_shell({s, 1.0 / n, 10}, 11, 6);
      const double b = strict_bound(s, n).bound;
      CHECK(sol.uncertainty_product == doctest::Approx(b).epsilon(1e-7));
      CHECK(sol.uncertainty_product >= b - 1e-8);
      CHECK(std::abs(sol.trace_residual) < 1e-8);
      CHECK(std::abs(sol.purity_residual) < 1e-8);
    }
  }
}

TEST_CASE("shell oracle weights match the closed-form spectrum") {
  const ModeSpectrum sp = build_spectrum(2, 4.0);
  const auto sol = oracle::minimize_shell({2, 0.25, 10}, 3, 8);
  for (std::size_t m = 0; m < sol.weights.size(); ++m) {
    const double expected = m < sp.shell_weight.size() ? sp.shell_weight[m] : 0.0;
    CHECK(sol.weights[m] == doctest::Approx(expected).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("shell oracle errors") {
  CHECK_THROWS_AS(oracle::minimize_shell({1, 0.05, 8}, 1, 2), DomainError);
  CHECK_THROWS_AS(oracle::minimize_shell({1, 1.5, 8}, 1, 2), DomainError);
  CHECK_THROWS_AS(oracle::minimize_shell({1, 0.5, 8}, 1, 0), DomainError);
  // 8 shells hold n_eff = 6 but the optimum needs the last one.
  CHECK_THROWS_AS(oracle::minimize_shell({1, 1.0 / 6.0, 8}, 1, 4), TruncationError);
}

TEST_CASE("oracles are deterministic for a seed") {
  const auto a = oracle::minimize_shell({1, 0.6, 8}, 99, 4, 1);
  const auto b = oracle::minimize_shell({1, 0.6, 8}, 99, 4, 3);
  CHECK(a.weights == b.weights);
  CHECK(a.best_restart == b.best_restart);
}

TEST_CASE("truncated X^2 and P^2") {
  const Eigen::MatrixXd x2 = oracle::position_squared(6);
  const Eigen::MatrixXd p2 = oracle::momentum_squared(6);
  CHECK(x2(0, 0) == 0.5);
  CHECK(x2(3, 3) == 3.5);
  CHECK(x2(0, 2) == doctest::Approx(std::sqrt(2.0) / 2.0));
  CHECK(p2(0, 2) == doctest::Approx(-std::sqrt(2.0) / 2.0));
  CHECK((x2 + p2).isDiagonal());
}

TEST_CASE("matrix oracle is diagonal at the optimum") {
  for (double mu : {1.0, 0.5}) {
    const auto sol = oracle::minimize_matrix({8, mu}, 5, 4);
    CHECK(sol.uncertainty_product == doctest::Approx(strict_bound(1, 1.0 / mu).bound).epsilon(1e-6));
    CHECK(sol.off_diagonal_norm < 1e-5);
    CHECK(sol.min_eigenvalue > -1e-10);
  }
  CHECK_THROWS_AS(oracle::minimize_matrix({4, 0.1}, 1, 2), DomainError);
}

TEST_CASE("audit of explicit mixtures") {
  const std::vector<std::vector<double>> mixtures{
      {1.0}, {2.0, 1.0}, {1.0, 1.0, 1.0, 1.0}, {0.0, 1.0}, build_spectrum(1, 2.0).shell_weight};
  const auto report = oracle::audit_mixtures(1, mixtures);
  CHECK(report.samples == 5);
  CHECK(report.violations == 0);
  CHECK(report.min_margin == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(oracle::audit_mixtures(1, std::vector<std::vector<double>>{{-1.0, 2.0}}),
                  DomainError);
}

TEST_CASE("random audit") {
  const auto a = oracle::random_mixture_audit(2, 500, 17, 1);
  const auto b = oracle::random_mixture_audit(2, 500, 17, 3);
  CHECK(a.violations == 0);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.worst.weights == b.worst.weights);
}

TEST_CASE("seed mixing") {
  CHECK(oracle::mix_seed(1, 0) != oracle::mix_seed(1, 1));
  CHECK(oracle::mix_seed(1, 0) != oracle::mix_seed(2, 0));
}
