#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "mixbound/kernels.hpp"

namespace kn = mixbound::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Vector widths differ per ISA; sweep lengths that hit every tail case.
constexpr std::size_t kMaxLength = 37;

}  // namespace

TEST_CASE("dispatch reports a usable ISA") {
  CHECK(kn::isa_available(kn::Isa::scalar));
  CHECK(kn::isa_available(kn::best_isa()));
  CHECK(kn::isa_available(kn::active_isa()));
  CHECK(std::string(kn::isa_name(kn::Isa::avx2)) == "avx2");
  for (auto isa : {kn::Isa::avx2, kn::Isa::neon})
    if (!kn::isa_available(isa)) CHECK_THROWS_AS(kn::set_active_isa(isa), std::invalid_argument);
}

TEST_CASE("SIMD kernels match the scalar reference") {
  std::mt19937_64 rng(2024);
  for (auto isa : {kn::Isa::avx2, kn::Isa::neon}) {
    if (!kn::isa_available(isa)) continue;
    CAPTURE(kn::isa_name(isa));
    for (std::size_t n = 0; n <= kMaxLength; ++n) {
      const auto a = random_vector(rng, n), b = random_vector(rng, n), w = random_vector(rng, n);
      double ref = kn::scalar::dot(a, b), got = 0.0;
      double wref = kn::scalar::weighted_dot(w, a, b), wgot = 0.0;
      std::vector<double> yref = b, ygot = b;
      kn::scalar::axpy(0.37, a, yref);
      if (isa == kn::Isa::avx2) {
        got = kn::avx2::dot(a, b);
        wgot = kn::avx2::weighted_dot(w, a, b);
        kn::avx2::axpy(0.37, a, ygot);
      } else {
        got = kn::neon::dot(a, b);
        wgot = kn::neon::weighted_dot(w, a, b);
        kn::neon::axpy(0.37, a, ygot);
      }
      CHECK(std::abs(got - ref) <= 1e-14 * (1.0 + n));
      CHECK(std::abs(wgot - wref) <= 1e-14 * (1.0 + n));
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(ygot[i] - yref[i]) <= 1e-15);
    }
  }
}

TEST_CASE("SIMD Hermite tables match the scalar recurrence") {
  for (auto isa : {kn::Isa::avx2, kn::Isa::neon}) {
    if (!kn::isa_available(isa)) continue;
    for (std::size_t n = 1; n <= kMaxLength; n += 6) {
      std::vector<double> xs(n);
      for (std::size_t i = 0; i < n; ++i) xs[i] = -6.0 + 12.0 * static_cast<double>(i) / n;
      const int n_max = 20;
      std::vector<double> ref((n_max + 1) * n), got((n_max + 1) * n);
      kn::scalar::hermite_functions(1.3, xs, n_max, ref);
      if (isa == kn::Isa::avx2)
        kn::avx2::hermite_functions(1.3, xs, n_max, got);
      else
        kn::neon::hermite_functions(1.3, xs, n_max, got);
      for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-13);
    }
  }
}

TEST_CASE("dispatcher honours the selected ISA") {
  std::mt19937_64 rng(7);
  const auto a = random_vector(rng, 29), b = random_vector(rng, 29);
  const kn::Isa original = kn::active_isa();
  kn::set_active_isa(kn::Isa::scalar);
  CHECK(kn::dot(a, b) == kn::scalar::dot(a, b));
  kn::set_active_isa(original);
  CHECK(kn::active_isa() == original);
}

TEST_CASE("kernel argument checks") {
  std::vector<double> a(4), b(5), out(3);
  CHECK_THROWS_AS(kn::dot(a, b), std::invalid_argument);
  CHECK_THROWS_AS(kn::hermite_functions(1.0, a, 2, out), std::invalid_argument);
}
