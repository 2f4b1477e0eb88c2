#include "mixbound/oscillator_basis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "mixbound/errors.hpp"
#include "mixbound/kernels.hpp"
#include "mixbound/parallel.hpp"
#include "mixbound/shells.hpp"

namespace mixbound {

namespace {

// Extra modes per axis retained when projecting a grid back onto the basis.
constexpr int kProjectionPadding = 3;

// Relative size of the Richardson error estimate above which the
// finite-difference momentum width is flagged.
constexpr double kFiniteDifferenceWarnLevel = 1e-5;

// <a| P^2 |b> for one axis in the oscillator basis of scale k.
double momentum_squared_element(int a, int b, double k) {
  const double k2 = k * k;
  if (a == b) return k2 * (2.0 * a + 1.0) / 2.0;
  const int lo = std::min(a, b);
  if (std::abs(a - b) == 2) return -k2 * std::sqrt((lo + 1.0) * (lo + 2.0)) / 2.0;
  return 0.0;
}

std::size_t ipow(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Axis Axis::symmetric(double half_width, int points) {
  if (!(half_width > 0.0) || points < 3) throw DomainError("axis needs half_width > 0 and >= 3 points");
  return Axis{-half_width, half_width, points};
}

std::vector<double> Axis::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = at(i);
  return out;
}

std::vector<double> Axis::trapezoid_weights() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = trapezoid_weight(i);
  return out;
}

Axis default_axis(int s, double k) {
  if (!(k > 0.0)) throw DomainError("scale factor k must be positive");
  if (s == 1) return Axis::symmetric(12.0 / k, 1201);
  if (s == 2) return Axis::symmetric(8.0 / k, 41);
  throw DomainError("coordinate grids support s = 1 or 2, got s = " + std::to_string(s));
}

OscillatorBasis::OscillatorBasis(double k, int n_max) : k_(k), n_max_(n_max) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scale factor k must be positive");
  if (n_max < 0) throw DomainError("n_max must be >= 0");
}

double OscillatorBasis::mode_function(int n, double x) const {
  if (n < 0 || n > n_max_)
    throw RangeError("mode index " + std::to_string(n) + " outside [0, " +
                     std::to_string(n_max_) + "]");
  const double kx = k_ * x;
  double prev = 0.0;
  double cur = std::sqrt(k_) / std::sqrt(std::sqrt(std::numbers::pi)) * std::exp(-0.5 * kx * kx);
  for (int m = 1; m <= n; ++m) {
    const double next = std::sqrt(2.0 / m) * kx * cur - std::sqrt((m - 1.0) / m) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> OscillatorBasis::tabulate(const Axis& axis) const {
  const std::vector<double> xs = axis.nodes();
  std::vector<double> out((static_cast<std::size_t>(n_max_) + 1) * xs.size());
  kernels::hermite_functions(k_, xs, n_max_, out);
  return out;
}

Eigen::MatrixXd OscillatorBasis::overlap(const Axis& axis) const {
  const std::vector<double> table = tabulate(axis);
  const std::vector<double> w = axis.trapezoid_weights();
  const std::size_t P = w.size();
  const int n = n_max_ + 1;
  Eigen::MatrixXd out(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b <= a; ++b) {
      const std::span<const double> ra(table.data() + static_cast<std::size_t>(a) * P, P);
      const std::span<const double> rb(table.data() + static_cast<std::size_t>(b) * P, P);
      out(a, b) = out(b, a) = kernels::weighted_dot(w, ra, rb);
    }
  }
  return out;
}

DensityMatrixGrid::DensityMatrixGrid(int s, Axis axis, double k, std::int64_t occupied_shells)
    : s_(s), axis_(axis), k_(k), occupied_shells_(occupied_shells) {
  if (s != 1 && s != 2)
    throw DomainError("coordinate grids support s = 1 or 2, got s = " + std::to_string(s));
  if (axis.points < 3 || !(axis.hi > axis.lo)) throw DomainError("axis must have >= 3 increasing nodes");
  sites_ = ipow(static_cast<std::size_t>(axis.points), s);
  values_.assign(sites_ * sites_, 0.0);
}

std::vector<double> DensityMatrixGrid::site_coordinates(std::size_t site) const {
  const auto P = static_cast<std::size_t>(axis_.points);
  if (s_ == 1) return {axis_.at(static_cast<int>(site))};
  return {axis_.at(static_cast<int>(site / P)), axis_.at(static_cast<int>(site % P))};
}

std::vector<double> DensityMatrixGrid::site_weights() const {
  const std::vector<double> w = axis_.trapezoid_weights();
  if (s_ == 1) return w;
  std::vector<double> out;
  out.reserve(sites_);
  for (double a : w)
    for (double b : w) out.push_back(a * b);
  return out;
}

double DensityMatrixGrid::trace() const {
  const std::vector<double> w = site_weights();
  double acc = 0.0;
  for (std::size_t r = 0; r < sites_; ++r) acc += w[r] * (*this)(r, r);
  return acc;
}

double DensityMatrixGrid::symmetry_residual() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < sites_; ++r)
    for (std::size_t c = r + 1; c < sites_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - (*this)(c, r)));
  return worst;
}

double DensityMatrixGrid::swap_symmetry_residual() const {
  if (s_ == 1) return 0.0;
  const auto P = static_cast<std::size_t>(axis_.points);
  auto swapped = [P](std::size_t site) { return (site % P) * P + site / P; };
  double worst = 0.0;
  for (std::size_t r = 0; r < sites_; ++r) {
    const std::size_t rs = swapped(r);
    for (std::size_t c = 0; c < sites_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - (*this)(rs, swapped(c))));
  }
  return worst;
}

double required_half_width(int s, std::int64_t layers, double k) {
  return (std::sqrt(2.0 * static_cast<double>(layers) + s) + 4.0) / k;
}

DensityMatrixGrid build_density_grid(const ModeSpectrum& spec, const Axis& axis, int threads) {
  if (spec.s != 1 && spec.s != 2)
    throw DomainError("coordinate grids support s = 1 or 2, got s = " + std::to_string(spec.s));
  if (spec.layers < 1 || spec.shell_weight.size() != static_cast<std::size_t>(spec.layers))
    throw DomainError("spectrum has inconsistent layer count");
  const double need = required_half_width(spec.s, spec.layers, spec.k);
  if (axis.lo > -need || axis.hi < need) {
    std::ostringstream os;
    os << "grid [" << axis.lo << ", " << axis.hi << "] is too small; it must span at least +/-"
       << need;
    throw DomainError(os.str());
  }

  DensityMatrixGrid grid(spec.s, axis, spec.k, spec.layers);
  const int top = static_cast<int>(spec.layers) - 1;
  const OscillatorBasis basis(spec.k, top);
  const std::vector<double> table = basis.tabulate(axis);
  const auto P = static_cast<std::size_t>(axis.points);
  const std::size_t sites = grid.sites();

  // Occupied modes as site vectors, with their eigenvalues.
  std::vector<std::vector<double>> modes;
  std::vector<double> weights;
  if (spec.s == 1) {
    for (int n = 0; n <= top; ++n) {
      modes.emplace_back(table.begin() + static_cast<std::ptrdiff_t>(n * P),
                         table.begin() + static_cast<std::ptrdiff_t>((n + 1) * P));
      weights.push_back(spec.shell_weight[static_cast<std::size_t>(n)]);
    }
  } else {
    for (int n1 = 0; n1 <= top; ++n1) {
      for (int n2 = 0; n1 + n2 <= top; ++n2) {
        std::vector<double> v(sites);
        const double* a = table.data() + static_cast<std::size_t>(n1) * P;
        const double* b = table.data() + static_cast<std::size_t>(n2) * P;
        for (std::size_t i = 0; i < P; ++i)
          for (std::size_t j = 0; j < P; ++j) v[i * P + j] = a[i] * b[j];
        modes.push_back(std::move(v));
        weights.push_back(spec.shell_weight[static_cast<std::size_t>(n1 + n2)]);
      }
    }
  }

  parallel_for(sites, threads, [&](std::size_t r) {
    std::span<double> out(grid.row(r), sites);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const double coeff = weights[m] * modes[m][r];
      if (coeff != 0.0) kernels::axpy(coeff, modes[m], out);
    }
  });
  return grid;
}

namespace {

// Trace of rho P^2 through projection onto the oscillator basis.
double momentum_trace_spectral(const DensityMatrixGrid& grid, const std::vector<double>& w,
                               int threads) {
  const int s = grid.dimension();
  const Axis& axis = grid.axis();
  const auto P = static_cast<std::size_t>(axis.points);
  const std::size_t sites = grid.sites();
  const int per_axis = static_cast<int>(grid.occupied_shells()) + kProjectionPadding;
  const OscillatorBasis basis(grid.k(), per_axis - 1);
  const std::vector<double> table = basis.tabulate(axis);

  std::vector<std::vector<int>> labels;  // per-axis mode indices of each projection vector
  std::vector<std::vector<double>> phi;
  if (s == 1) {
    for (int a = 0; a < per_axis; ++a) {
      labels.push_back({a});
      phi.emplace_back(table.begin() + static_cast<std::ptrdiff_t>(a * P),
                       table.begin() + static_cast<std::ptrdiff_t>((a + 1) * P));
    }
  } else {
    for (int a1 = 0; a1 < per_axis; ++a1) {
      for (int a2 = 0; a2 < per_axis; ++a2) {
        std::vector<double> v(sites);
        const double* x = table.data() + static_cast<std::size_t>(a1) * P;
        const double* y = table.data() + static_cast<std::size_t>(a2) * P;
        for (std::size_t i = 0; i < P; ++i)
          for (std::size_t j = 0; j < P; ++j) v[i * P + j] = x[i] * y[j];
        labels.push_back({a1, a2});
        phi.push_back(std::move(v));
      }
    }
  }
  const std::size_t nb = phi.size();

  // half[b][r] = sum_c rho(r, c) w_c phi_b(c)
  std::vector<std::vector<double>> half(nb, std::vector<double>(sites));
  parallel_for(sites, threads, [&](std::size_t r) {
    const std::span<const double> row(grid.row(r), sites);
    for (std::size_t b = 0; b < nb; ++b) half[b][r] = kernels::weighted_dot(w, row, phi[b]);
  });

  double acc = 0.0;
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      double element = 0.0;  // <b| P^2 |a>, summed over axes
      for (int d = 0; d < s; ++d) {
        bool others_equal = true;
        for (int e = 0; e < s; ++e)
          if (e != d && labels[a][e] != labels[b][e]) others_equal = false;
        if (others_equal) element += momentum_squared_element(labels[b][d], labels[a][d], grid.k());
      }
      if (element == 0.0) continue;
      acc += kernels::weighted_dot(w, phi[a], half[b]) * element;
    }
  }
  return acc;
}

// Fourth-order central second difference along each axis of the first argument,
// evaluated on the diagonal X = X'. `stride` selects every stride-th node.
double momentum_trace_difference(const DensityMatrixGrid& grid, const std::vector<double>& w,
                                 int stride) {
  const int s = grid.dimension();
  const auto P = static_cast<std::ptrdiff_t>(grid.axis().points);
  const double h = grid.axis().step() * stride;
  const std::ptrdiff_t reach = 2 * stride;
  double acc = 0.0;
  for (std::size_t site = 0; site < grid.sites(); ++site) {
    const auto idx = static_cast<std::ptrdiff_t>(site);
    double lap = 0.0;
    bool interior = true;
    for (int d = 0; d < s; ++d) {
      const std::ptrdiff_t unit = (s == 2 && d == 0) ? P : 1;
      const std::ptrdiff_t coord = (s == 2 && d == 0) ? idx / P : idx % P;
      if (coord < reach || coord >= P - reach) {
        interior = false;
        break;
      }
      const std::ptrdiff_t step = stride * unit;
      auto at = [&](std::ptrdiff_t off) {
        return grid(static_cast<std::size_t>(idx + off), site);
      };
      lap += (-at(2 * step) + 16.0 * at(step) - 30.0 * at(0) + 16.0 * at(-step) - at(-2 * step)) /
             (12.0 * h * h);
    }
    if (interior) acc -= w[site] * lap;
  }
  return acc;
}

}  // namespace

QuadratureMoments quadrature_moments(const DensityMatrixGrid& grid, MomentumRoute route,
                                     int threads) {
  const int s = grid.dimension();
  const std::size_t sites = grid.sites();
  const std::vector<double> w = grid.site_weights();

  QuadratureMoments out;
  double second_moment = 0.0;
  for (std::size_t r = 0; r < sites; ++r) {
    double r2 = 0.0;
    for (double x : grid.site_coordinates(r)) r2 += x * x;
    second_moment += w[r] * r2 * grid(r, r);
  }
  out.trace = grid.trace();

  std::vector<double> row_norms(sites);
  parallel_for(sites, threads, [&](std::size_t r) {
    const std::span<const double> row(grid.row(r), sites);
    row_norms[r] = w[r] * kernels::weighted_dot(w, row, row);
  });
  double purity = 0.0;
  for (double v : row_norms) purity += v;

  double momentum = 0.0;
  if (route == MomentumRoute::spectral) {
    momentum = momentum_trace_spectral(grid, w, threads);
  } else {
    momentum = momentum_trace_difference(grid, w, 1);
    const double coarse = momentum_trace_difference(grid, w, 2);
    // Fourth-order scheme: error(h) ~ (coarse - fine) / 15.
    const double estimate = std::abs(coarse - momentum) / 15.0;
    if (!(estimate <= kFiniteDifferenceWarnLevel * std::abs(momentum))) {
      out.accuracy_warning = true;
      std::ostringstream os;
      os << "second-difference momentum width not converged: estimated relative error "
         << estimate / std::abs(momentum) << "; refine the grid";
      out.note = os.str();
    }
  }

  out.delta_x = std::sqrt(second_moment / s);
  out.delta_q = std::sqrt(momentum / s);
  out.n_eff = 1.0 / purity;
  return out;
}

}  // namespace mixbound
