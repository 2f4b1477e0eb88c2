#include "mixbound/bounds.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "mixbound/errors.hpp"
#include "mixbound/parallel.hpp"
#include "mixbound/shells.hpp"

namespace mixbound {

namespace {

constexpr int kMaxBisections = 200;
constexpr double kLayerEquationTolerance = 1e-12;
constexpr double kLayerEquationLimit = 1e-10;

void check_dimension(int s) {
  if (s < 1) throw DomainError("dimension s must be >= 1, got " + std::to_string(s));
}

// log((s+1)!) accumulated the same way as the rising products it divides, so the
// pure-state endpoint cancels exactly.
double log_factorial_s_plus_1(int s) { return log_rising_factorial(1.0, s + 1); }

double log_continuous_layer_neff(int s, double l_tilde) {
  const double sd = s;
  return std::log(sd + 2.0) + log_rising_factorial(l_tilde, s + 1) -
         std::log(sd + 2.0 * l_tilde) - log_factorial_s_plus_1(s);
}

}  // namespace

BoundEvaluation strict_bound(int s, double n_eff) {
  BoundEvaluation out;
  out.s = s;
  out.n_eff = n_eff;
  out.layers = select_layer(s, n_eff, out.admissible);
  out.bound = bound_at_layer(s, n_eff, out.layers);
  out.packing = packing_coefficient(s, n_eff, out.bound);
  return out;
}

double continuous_layer_neff(int s, double l_tilde) {
  check_dimension(s);
  if (!(l_tilde >= 1.0)) throw DomainError("continuous layer parameter must be >= 1");
  return std::exp(log_continuous_layer_neff(s, l_tilde));
}

ApproxBound approx_bound(int s, double n_eff, double l_max) {
  check_dimension(s);
  if (!(n_eff >= 1.0) || !std::isfinite(n_eff)) throw DomainError("n_eff must be finite and >= 1");

  ApproxBound out;
  out.s = s;
  out.n_eff = n_eff;
  const double target = std::log(n_eff);
  auto excess = [&](double l) { return log_continuous_layer_neff(s, l) - target; };

  double lo = 1.0;
  double r_lo = excess(lo);
  double root = 1.0;
  double r_root = r_lo;
  if (n_eff == 1.0 || std::abs(std::expm1(r_lo)) < kLayerEquationTolerance) {
    root = 1.0;
  } else {
    double hi = 2.0;
    double r_hi = excess(hi);
    while (r_hi < 0.0) {
      hi *= 2.0;
      if (hi > l_max) {
        double needed = hi;
        while (excess(needed) < 0.0) needed *= 2.0;
        std::ostringstream os;
        os << "continuous layer root for s=" << s << ", n_eff=" << n_eff
           << " is not bracketed within [1, " << l_max << "]; needs L_max >= " << needed;
        throw RangeError(os.str());
      }
      lo = hi / 2.0;
      r_lo = excess(lo);
      r_hi = excess(hi);
    }
    if (!(r_lo < 0.0 && r_hi >= 0.0 && r_lo < r_hi))
      throw ConsistencyError("continuous layer equation is not increasing on its bracket");

    root = hi;
    r_root = r_hi;
    for (int it = 0; it < kMaxBisections; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double r_mid = excess(mid);
      if (r_mid < r_lo || r_mid > r_hi)
        throw ConsistencyError("continuous layer equation is not monotone inside its bracket");
      root = mid;
      r_root = r_mid;
      if (std::abs(std::expm1(r_mid)) < kLayerEquationTolerance) break;
      if (r_mid < 0.0) {
        lo = mid;
        r_lo = r_mid;
      } else {
        hi = mid;
        r_hi = r_mid;
      }
    }
  }

  out.l_tilde = root;
  out.residual = std::abs(std::expm1(r_root));
  if (!(out.residual < kLayerEquationLimit)) {
    std::ostringstream os;
    os << "continuous layer equation residual " << out.residual << " for s=" << s
       << ", n_eff=" << n_eff;
    throw ConsistencyError(os.str());
  }
  out.bound = (s + 2.0 * root) / (2.0 * (s + 2.0));
  out.packing = packing_coefficient(s, n_eff, out.bound);
  return out;
}

double max_neff(int s, double uv) {
  check_dimension(s);
  if (!(uv >= 0.5) || !std::isfinite(uv)) throw DomainError("uncertainty product must be >= 1/2");
  const double sd = s;
  const double base = (sd + 2.0) * uv - 0.5 * sd;
  if (!(base > 0.0)) throw DomainError("gamma argument (s+2)uv - s/2 must be positive");
  if (uv == 0.5) return 1.0;
  return std::exp(-std::log(2.0 * uv) + log_rising_factorial(base, s + 1) -
                  log_factorial_s_plus_1(s));
}

double asymptotic_packing(int s) {
  check_dimension(s);
  double c = 1.0;
  for (int j = 1; j <= s + 1; ++j) c *= 2.0 * j / (s + 2.0);
  return c;
}

double packing_coefficient(int s, double n_eff, double uv) {
  return std::pow(2.0 * uv, s) / n_eff;
}

std::vector<double> neff_grid(double lo, double hi, int points, bool log_spacing) {
  if (!(lo >= 1.0) || !std::isfinite(hi)) throw DomainError("n_eff grid must start at >= 1");
  if (points < 1) throw DomainError("grid needs at least one point");
  if (points == 1) {
    if (lo != hi) throw DomainError("a single-point grid requires n_eff_min == n_eff_max");
    return {lo};
  }
  if (!(lo < hi)) throw DomainError("n_eff_min must be < n_eff_max");

  std::vector<double> grid(static_cast<std::size_t>(points));
  const double span = points - 1.0;
  for (int i = 0; i < points; ++i) {
    const double t = i / span;
    grid[static_cast<std::size_t>(i)] =
        log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                    : lo + t * (hi - lo);
  }
  grid.front() = lo;
  grid.back() = hi;
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("grid is too dense to be strictly increasing");
  return grid;
}

std::vector<CurveRow> packing_curve(const CurveRequest& request) {
  if (request.dimensions.empty()) throw DomainError("curve needs at least one dimension");
  for (int s : request.dimensions) check_dimension(s);
  const std::vector<double> grid =
      neff_grid(request.n_eff_min, request.n_eff_max, request.points, request.log_spacing);

  std::vector<CurveRow> rows(grid.size());
  parallel_for(grid.size(), request.threads, [&](std::size_t i) {
    const double n = grid[i];
    CurveRow& row = rows[i];
    row.n_eff = n;
    row.columns.reserve(request.dimensions.size());
    try {
      for (int s : request.dimensions) {
        const BoundEvaluation strict = strict_bound(s, n);
        const ApproxBound approx = approx_bound(s, n);
        CurvePoint p;
        p.s = s;
        p.layers = strict.layers;
        p.strict_bound = strict.bound;
        p.approx_bound = approx.bound;
        p.strict_packing = strict.packing;
        p.approx_packing = approx.packing;
        p.asymptotic_packing = asymptotic_packing(s);
        row.columns.push_back(p);
      }
    } catch (const DomainError& e) {
      std::ostringstream os;
      os << "at n_eff=" << n << ": " << e.what();
      throw DomainError(os.str());
    } catch (const RangeError& e) {
      std::ostringstream os;
      os << "at n_eff=" << n << ": " << e.what();
      throw RangeError(os.str());
    }
  });
  return rows;
}

}  // namespace mixbound
