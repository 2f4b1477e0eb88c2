// mixbound: uncertainty bounds of mixed states from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mixbound/bounds.hpp"
#include "mixbound/format.hpp"
#include "mixbound/oscillator_basis.hpp"
#include "mixbound/parallel.hpp"
#include "mixbound/spectrum.hpp"
#include "mixbound/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Writes to a path or, for "-" / empty, to stdout. The file is only opened
// once the content is complete, so failures never leave partial output.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw UsageError("failed writing '" + path + "'");
}

struct BoundArgs {
  int s = 1;
  double neff = 1.0;
  bool json = false;
};

int cmd_bound(const BoundArgs& a) {
  using mixbound::format_number;
  using mixbound::round_significant;
  const auto strict = mixbound::strict_bound(a.s, a.neff);
  const auto approx = mixbound::approx_bound(a.s, a.neff);
  const double c_inf = mixbound::asymptotic_packing(a.s);

  if (a.json) {
    nlohmann::ordered_json j;
    j["n_eff"] = round_significant(a.neff);
    j["L"] = strict.layers;
    j["L_admissible"] = {strict.admissible.lo, strict.admissible.hi};
    j["B_strict"] = round_significant(strict.bound);
    j["B_approx"] = round_significant(approx.bound);
    j["L_tilde"] = round_significant(approx.l_tilde);
    j["C_strict"] = round_significant(strict.packing);
    j["C_asymptotic"] = round_significant(c_inf);
    std::cout << j.dump() << '\n';
    return kExitOk;
  }
  std::cout << "n_eff=" << format_number(a.neff) << '\n'
            << "L=" << strict.layers << '\n'
            << "L_admissible=[" << strict.admissible.lo << ',' << strict.admissible.hi << "]\n"
            << "B_strict=" << format_number(strict.bound) << '\n'
            << "B_approx=" << format_number(approx.bound) << '\n'
            << "L_tilde=" << format_number(approx.l_tilde) << '\n'
            << "C_strict=" << format_number(strict.packing) << '\n'
            << "C_asymptotic=" << format_number(c_inf) << '\n';
  return kExitOk;
}

struct SpectrumArgs {
  int s = 1;
  double neff = 1.0;
  double k = 1.0;
  std::string out;
};

int cmd_spectrum(const SpectrumArgs& a) {
  const auto spec = mixbound::build_spectrum(a.s, a.neff, a.k);
  std::ostringstream os;
  mixbound::write_spectrum_csv(os, spec);
  emit(a.out, os.str());
  return kExitOk;
}

struct CurveArgs {
  std::vector<int> dims{1};
  double neff_min = 1.0;
  double neff_max = 100.0;
  int points = 2;
  bool log = false;
  std::string out;
};

int cmd_curve(const CurveArgs& a, int threads) {
  mixbound::CurveRequest req;
  req.dimensions = a.dims;
  req.n_eff_min = a.neff_min;
  req.n_eff_max = a.neff_max;
  req.points = a.points;
  req.log_spacing = a.log;
  req.threads = threads;
  std::ostringstream os;
  mixbound::write_curve_csv(os, mixbound::packing_curve(req));
  emit(a.out, os.str());
  return kExitOk;
}

struct GridArgs {
  int s = 1;
  double neff = 1.0;
  double k = 1.0;
  std::optional<int> points;
  std::optional<double> half_width;
  std::string out;
};

// Long-format dump of rho(X, X') with columns x1..xs, x1p..xsp, rho.
int cmd_grid(const GridArgs& a, int threads) {
  const auto spec = mixbound::build_spectrum(a.s, a.neff, a.k);
  mixbound::Axis axis = mixbound::default_axis(a.s, a.k);
  if (a.half_width) axis = {-*a.half_width, *a.half_width, axis.points};
  if (a.points) axis.points = *a.points;
  const auto grid = mixbound::build_density_grid(spec, axis, threads);

  std::ostringstream os;
  for (int d = 1; d <= a.s; ++d) os << 'x' << d << ',';
  for (int d = 1; d <= a.s; ++d) os << 'x' << d << "p,";
  os << "rho\n";
  std::vector<std::vector<double>> coords(grid.sites());
  for (std::size_t i = 0; i < grid.sites(); ++i) coords[i] = grid.site_coordinates(i);
  for (std::size_t r = 0; r < grid.sites(); ++r) {
    for (std::size_t c = 0; c < grid.sites(); ++c) {
      for (double x : coords[r]) os << mixbound::format_number(x) << ',';
      for (double x : coords[c]) os << mixbound::format_number(x) << ',';
      os << mixbound::format_number(grid(r, c)) << '\n';
    }
  }
  emit(a.out, os.str());
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
};

int cmd_verify(const VerifyArgs& a, int threads) {
  const auto& names = mixbound::verify::suite_names();
  if (a.suite != "all" && std::find(names.begin(), names.end(), a.suite) == names.end())
    throw UsageError("unknown suite '" + a.suite + "'");
  const auto results = mixbound::verify::run(a.suite, a.seed, threads);
  std::size_t failed = 0;
  std::string failures;
  for (const auto& r : results) {
    std::cout << "check suite=" << r.suite << " name=" << r.name
              << " status=" << (r.passed ? "pass" : "fail");
    if (!r.detail.empty()) std::cout << ' ' << r.detail;
    std::cout << '\n';
    if (!r.passed) {
      ++failed;
      if (!failures.empty()) failures += ',';
      failures += r.suite + '/' + r.name;
    }
  }
  std::cout << "summary suite=" << a.suite << " seed=" << a.seed << " checks=" << results.size()
            << " failed=" << failed << " status=" << (failed == 0 ? "pass" : "fail");
  if (failed) std::cout << " failures=" << failures;
  std::cout << '\n';
  return failed == 0 ? kExitOk : kExitFailed;
}

struct NeffMaxArgs {
  int s = 1;
  double uv = 0.5;
};

int cmd_neff_max(const NeffMaxArgs& a) {
  std::cout << mixbound::format_number(mixbound::max_neff(a.s, a.uv)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty bounds for mixed states versus the effective number of states"};
  app.require_subcommand(1);
  int threads = mixbound::default_threads();
  app.add_option("--threads", threads, "Cap on worker threads")->check(CLI::PositiveNumber);

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Strict and approximate bound at one n_eff");
  bound_cmd->add_option("--s", bound.s, "Spatial dimension")->required()->check(CLI::PositiveNumber);
  bound_cmd->add_option("--neff", bound.neff, "Effective number of states (>= 1)")->required();
  bound_cmd->add_flag("--json", bound.json, "Emit one JSON object");

  SpectrumArgs spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Shell weights of the minimizing state");
  spectrum_cmd->add_option("--s", spectrum.s, "Spatial dimension")->required()->check(CLI::PositiveNumber);
  spectrum_cmd->add_option("--neff", spectrum.neff, "Effective number of states")->required();
  spectrum_cmd->add_option("--k", spectrum.k, "Oscillator scale factor");
  spectrum_cmd->add_option("--out", spectrum.out, "Output CSV path (default stdout)");

  CurveArgs curve;
  auto* curve_cmd = app.add_subcommand("curve", "Packing-coefficient table over an n_eff grid");
  curve_cmd->add_option("--s", curve.dims, "Comma-separated dimensions")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  curve_cmd->add_option("--neff-min", curve.neff_min, "Smallest n_eff")->required();
  curve_cmd->add_option("--neff-max", curve.neff_max, "Largest n_eff")->required();
  curve_cmd->add_option("--points", curve.points, "Number of grid points")->required();
  curve_cmd->add_flag("--log", curve.log, "Logarithmic spacing");
  curve_cmd->add_option("--out", curve.out, "Output CSV path ('-' for stdout)")->required();

  GridArgs grid;
  auto* grid_cmd = app.add_subcommand("grid", "Sampled density matrix of the minimizing state");
  grid_cmd->add_option("--s", grid.s, "Spatial dimension")->required()->check(CLI::Range(1, 2));
  grid_cmd->add_option("--neff", grid.neff, "Effective number of states")->required();
  grid_cmd->add_option("--k", grid.k, "Oscillator scale factor");
  grid_cmd->add_option("--points", grid.points, "Nodes per axis")->check(CLI::Range(3, 100000));
  grid_cmd->add_option("--half-width", grid.half_width, "Axis half-width")
      ->check(CLI::PositiveNumber);
  grid_cmd->add_option("--out", grid.out, "Output CSV path (default stdout)");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant and oracle suites");
  verify_cmd->add_option("--suite", verify.suite, "shells|spectrum|oracle|quadrature|all");
  verify_cmd->add_option("--seed", verify.seed, "Seed for randomized checks");

  NeffMaxArgs neff_max;
  auto* neff_max_cmd = app.add_subcommand("neff-max", "Largest n_eff reachable at a given Dx*Dq");
  neff_max_cmd->add_option("--s", neff_max.s, "Spatial dimension")->required()->check(CLI::PositiveNumber);
  neff_max_cmd->add_option("--uv", neff_max.uv, "Uncertainty product (>= 0.5)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (bound_cmd->parsed()) return cmd_bound(bound);
    if (spectrum_cmd->parsed()) return cmd_spectrum(spectrum);
    if (curve_cmd->parsed()) return cmd_curve(curve, threads);
    if (grid_cmd->parsed()) return cmd_grid(grid, threads);
    if (verify_cmd->parsed()) return cmd_verify(verify, threads);
    if (neff_max_cmd->parsed()) return cmd_neff_max(neff_max);
  } catch (const std::exception& e) {
    std::cerr << "mixbound: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
