#include "mixbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "mixbound/bounds.hpp"
#include "mixbound/format.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/oscillator_basis.hpp"
#include "mixbound/shells.hpp"
#include "mixbound/spectrum.hpp"

namespace mixbound::verify {

namespace {

class Recorder {
public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  void check(std::string name, bool passed, std::string detail = {}) {
    out_.push_back({suite_, std::move(name), passed, std::move(detail)});
  }

  std::vector<CheckResult> take() { return std::move(out_); }

private:
  std::string suite_;
  std::vector<CheckResult> out_;
};

std::string kv(std::string_view key, double value) {
  return std::string(key) + "=" + format_number(value);
}

// Number of vectors in N^d with each possible total, by convolution.
std::vector<std::vector<Count>> composition_counts(int max_dim, int max_total) {
  std::vector<std::vector<Count>> c(static_cast<std::size_t>(max_dim) + 1,
                                    std::vector<Count>(static_cast<std::size_t>(max_total) + 1, 0));
  for (int r = 0; r <= max_total; ++r) c[1][r] = 1;
  for (int d = 2; d <= max_dim; ++d)
    for (int r = 0; r <= max_total; ++r)
      for (int j = 0; j <= r; ++j) c[d][r] += c[d - 1][r - j];
  return c;
}

std::vector<CheckResult> shells_suite() {
  Recorder rec("shells");
  const auto counts = composition_counts(10, 40);
  int mismatches = 0, identity_failures = 0, table_failures = 0;
  for (int s = 1; s <= 10; ++s) {
    const ShellTable table(s, 40);
    Count brute = 0;
    for (int L = 1; L <= 40; ++L) {
      brute += counts[s][L - 1];
      const Count n = mode_count(s, L);
      if (n != brute) ++mismatches;
      if (static_cast<Count>(L) * degeneracy(s, L) != static_cast<Count>(s) * n)
        ++identity_failures;
      if (table.cumulative(L) != n) ++table_failures;
    }
  }
  rec.check("mode_count_vs_enumeration", mismatches == 0,
            "mismatches=" + std::to_string(mismatches));
  rec.check("cumulative_identity", identity_failures == 0,
            "failures=" + std::to_string(identity_failures));
  rec.check("table_prefix_sums", table_failures == 0, "failures=" + std::to_string(table_failures));

  double worst = 0.0;
  double factorial = 1.0;
  for (int n = 0; n <= 20; ++n) {
    if (n > 0) factorial *= n;
    worst = std::max(worst, std::abs(std::exp(log_gamma(n + 1.0)) / factorial - 1.0));
  }
  rec.check("log_gamma_factorials", worst <= 1e-12, kv("max_rel_err", worst));
  return rec.take();
}

std::vector<CheckResult> spectrum_suite(std::uint64_t seed) {
  Recorder rec("spectrum");
  for (int s = 1; s <= 3; ++s) {
    int failures = 0;
    double worst_residual = 0.0, worst_gap = 0.0;
    for (double n : neff_grid(1.0, 200.0, 100, false)) {
      const ModeSpectrum spec = build_spectrum(s, n);
      worst_residual = std::max(
          {worst_residual, std::abs(spec.trace_residual()), std::abs(spec.purity_residual())});
      const double gap = std::abs(spectrum_moments(spec).product() - strict_bound(s, n).bound);
      worst_gap = std::max(worst_gap, gap);
      const auto& w = spec.shell_weight;
      for (std::size_t m = 0; m < w.size(); ++m) {
        if (w[m] < 0.0 || w[m] > 1.0) ++failures;
        if (m > 0 && w[m] > w[m - 1]) ++failures;
        if (m > 1 && std::abs(w[m] - 2.0 * w[m - 1] + w[m - 2]) > 1e-12 * w[0]) ++failures;
      }
      if (spec.layers > 1 && shell_weight_formula(s, n, spec.layers, spec.layers) > 1e-15)
        ++failures;
    }
    const std::string tag = "_s" + std::to_string(s);
    rec.check("spectrum_shape" + tag, failures == 0, "failures=" + std::to_string(failures));
    rec.check("spectrum_residuals" + tag, worst_residual < 1e-10, kv("max_residual", worst_residual));
    rec.check("spectrum_saturates_bound" + tag, worst_gap < 1e-12, kv("max_gap", worst_gap));
  }

  std::mt19937_64 rng(oracle::mix_seed(seed, 0x5eed));
  for (int s = 1; s <= 3; ++s) {
    int mismatches = 0;
    std::string first;
    for (int i = 0; i < 1000; ++i) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const double n = 1.0 + 199.0 * u;
      LayerRange admissible;
      const std::int64_t chosen = select_layer(s, n, admissible);
      if (chosen != admissible.hi) {
        if (mismatches++ == 0)
          first = " first_s=" + std::to_string(s) + " first_neff=" + format_number(n);
      }
    }
    rec.check("argmin_is_largest_admissible_s" + std::to_string(s), mismatches == 0,
              "mismatches=" + std::to_string(mismatches) + first);
  }
  return rec.take();
}

std::vector<CheckResult> oracle_suite(std::uint64_t seed, int threads) {
  Recorder rec("oracle");
  for (int s = 1; s <= 3; ++s) {
    for (double n : {1.2, 1.5, 2.0, 2.5, 4.0, 7.0}) {
      const std::string name = "shell_s" + std::to_string(s) + "_neff" + format_number(n);
      try {
        const auto sol = oracle::minimize_shell({s, 1.0 / n, 12}, seed, oracle::kDefaultRestarts,
                                                threads);
        const double b = strict_bound(s, n).bound;
        const double rel = std::abs(sol.uncertainty_product - b) / b;
        rec.check(name, rel < 1e-5 && sol.uncertainty_product >= b - 1e-8,
                  kv("objective", sol.uncertainty_product) + " " + kv("bound", b) + " " +
                      kv("rel_delta", rel));
      } catch (const std::exception& e) {
        rec.check(name, false, std::string("error=") + e.what());
      }
    }
  }
  for (double mu : {1.0, 2.0 / 3.0, 0.5}) {
    const std::string name = "matrix_dim12_mu" + format_number(mu);
    try {
      const auto sol = oracle::minimize_matrix({12, mu}, seed, oracle::kDefaultRestarts, threads);
      const double b = strict_bound(1, 1.0 / mu).bound;
      const double delta = std::abs(sol.uncertainty_product - b);
      rec.check(name, delta < 1e-4 && sol.off_diagonal_norm < 1e-5,
                kv("objective", sol.uncertainty_product) + " " + kv("bound", b) + " " +
                    kv("delta", delta) + " " + kv("off_diagonal", sol.off_diagonal_norm));
    } catch (const std::exception& e) {
      rec.check(name, false, std::string("error=") + e.what());
    }
  }
  for (int s = 1; s <= 3; ++s) {
    const auto report = oracle::random_mixture_audit(s, 10000, seed, threads);
    rec.check("audit_s" + std::to_string(s), report.violations == 0,
              "samples=" + std::to_string(report.samples) +
                  " violations=" + std::to_string(report.violations) + " " +
                  kv("min_margin", report.min_margin));
  }
  return rec.take();
}

std::vector<CheckResult> quadrature_suite(int threads) {
  Recorder rec("quadrature");
  const Axis axis = default_axis(1, 1.0);
  const Eigen::MatrixXd gram = OscillatorBasis(1.0, 12).overlap(axis);
  const double ortho = (gram - Eigen::MatrixXd::Identity(13, 13)).cwiseAbs().maxCoeff();
  rec.check("orthonormality_0_12", ortho < 1e-8, kv("max_dev", ortho));

  for (double n : {1.0, 1.5, 2.0, 3.7, 10.0}) {
    const ModeSpectrum spec = build_spectrum(1, n);
    const Moments exact = spectrum_moments(spec);
    const DensityMatrixGrid grid = build_density_grid(spec, axis, threads);
    const QuadratureMoments q = quadrature_moments(grid, MomentumRoute::spectral, threads);
    const QuadratureMoments fd = quadrature_moments(grid, MomentumRoute::finite_difference, threads);
    const double dx = std::abs(q.delta_x - exact.delta_x);
    const double dq = std::abs(q.delta_q - exact.delta_q);
    const double dn = std::abs(q.n_eff - exact.n_eff) / exact.n_eff;
    const double routes = std::abs(q.delta_q - fd.delta_q);
    const std::string tag = "_s1_neff" + format_number(n);
    rec.check("moments" + tag, dx < 1e-6 && dq < 1e-6 && dn < 1e-5,
              kv("dx_err", dx) + " " + kv("dq_err", dq) + " " + kv("neff_rel_err", dn));
    rec.check("momentum_routes" + tag, routes < 1e-4, kv("route_gap", routes));
  }

  const ModeSpectrum spec2 = build_spectrum(2, 3.0);
  const DensityMatrixGrid grid2 = build_density_grid(spec2, default_axis(2, 1.0), threads);
  const double trace_err = std::abs(grid2.trace() - 1.0);
  const double swap = grid2.swap_symmetry_residual();
  rec.check("trace_s2_neff3", trace_err < 1e-6, kv("trace_err", trace_err));
  rec.check("swap_symmetry_s2_neff3", swap < 1e-10, kv("residual", swap));
  return rec.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"shells", "spectrum", "oracle", "quadrature"};
  return names;
}

std::vector<CheckResult> run(std::string_view suite, std::uint64_t seed, int threads) {
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
      auto part = run(name, seed, threads);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  if (suite == "shells") return shells_suite();
  if (suite == "spectrum") return spectrum_suite(seed);
  if (suite == "oracle") return oracle_suite(seed, threads);
  if (suite == "quadrature") return quadrature_suite(threads);
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace mixbound::verify
