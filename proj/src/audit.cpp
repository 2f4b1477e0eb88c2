#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mixbound/bounds.hpp"
#include "mixbound/errors.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/parallel.hpp"
#include "mixbound/shells.hpp"
#include "mixbound/spectrum.hpp"

namespace mixbound::oracle {

namespace {

constexpr std::size_t kReportedViolations = 8;

// Shells available to random samples; keeps n_eff in a range where the strict
// bound is cheap to evaluate while still exercising several layer counts.
int sample_shells(int s) { return s == 1 ? 24 : (s == 2 ? 12 : 8); }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

AuditSample evaluate(int s, std::vector<double> w) {
  double total = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    if (!(w[m] >= 0.0)) throw DomainError("mixture weights must be non-negative");
    total += static_cast<double>(degeneracy(s, static_cast<std::int64_t>(m))) * w[m];
  }
  if (!(total > 0.0)) throw DomainError("mixture has zero total weight");
  for (double& x : w) x /= total;

  AuditSample out;
  const Moments mo = shell_moments(s, w);
  out.n_eff = std::max(1.0, mo.n_eff);
  out.uncertainty_product = mo.product();
  out.bound = strict_bound(s, out.n_eff).bound;
  out.margin = out.uncertainty_product - out.bound;
  out.weights = std::move(w);
  return out;
}

// Sample 0 is the pure ground state. Later samples cycle through flat
// Dirichlet draws, sharpened or flattened Dirichlet draws, and noisy
// decreasing-linear profiles that sit close to the optimal shape.
std::vector<double> draw(int s, std::uint64_t seed, std::size_t index) {
  const int shells = sample_shells(s);
  if (index == 0) {
    std::vector<double> w(static_cast<std::size_t>(shells), 0.0);
    w[0] = 1.0;
    return w;
  }
  std::mt19937_64 rng(mix_seed(seed, index));
  const int support = 1 + static_cast<int>(uniform01(rng) * shells);
  std::vector<double> w(static_cast<std::size_t>(shells), 0.0);
  switch (index % 3) {
    case 0: {
      for (int m = 0; m < support; ++m) w[m] = -std::log1p(-uniform01(rng));
      break;
    }
    case 1: {
      const double power = std::exp(std::log(0.2) + uniform01(rng) * std::log(25.0));
      for (int m = 0; m < support; ++m) w[m] = std::pow(-std::log1p(-uniform01(rng)), power);
      break;
    }
    default: {
      const double overshoot = 1.0 + 0.5 * uniform01(rng);
      const double noise = 0.05 * uniform01(rng);
      for (int m = 0; m < support; ++m) {
        const double base = std::max(0.0, 1.0 - overshoot * m / support);
        w[m] = base * (1.0 + noise * (2.0 * uniform01(rng) - 1.0));
      }
      break;
    }
  }
  if (std::all_of(w.begin(), w.end(), [](double x) { return x == 0.0; })) w[0] = 1.0;
  return w;
}

AuditReport summarize(int s, std::vector<AuditSample> samples) {
  AuditReport report;
  report.s = s;
  report.samples = samples.size();
  if (samples.empty()) return report;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].margin < samples[worst].margin) worst = i;
    if (samples[i].margin < -kAuditTolerance) {
      ++report.violations;
      if (report.violating.size() < kReportedViolations) report.violating.push_back(samples[i]);
    }
  }
  report.min_margin = samples[worst].margin;
  report.worst = samples[worst];
  return report;
}

}  // namespace

AuditReport audit_mixtures(int s, std::span<const std::vector<double>> mixtures, int threads) {
  if (s < 1) throw DomainError("dimension s must be >= 1");
  std::vector<AuditSample> samples(mixtures.size());
  parallel_for(mixtures.size(), threads,
               [&](std::size_t i) { samples[i] = evaluate(s, mixtures[i]); });
  return summarize(s, std::move(samples));
}

AuditReport random_mixture_audit(int s, std::size_t count, std::uint64_t seed, int threads) {
  if (s < 1) throw DomainError("dimension s must be >= 1");
  if (count < 1) throw DomainError("audit needs at least one sample");
  std::vector<AuditSample> samples(count);
  parallel_for(count, threads,
               [&](std::size_t i) { samples[i] = evaluate(s, draw(s, seed, i)); });
  return summarize(s, std::move(samples));
}

}  // namespace mixbound::oracle
