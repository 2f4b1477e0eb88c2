#pragma once

// Coordinate-space realization of oscillator-basis mixtures.
//
// A DensityMatrixGrid samples rho(X, X') on a tensor grid for s = 1 or 2.
// quadrature_moments() recomputes widths and n_eff from those samples by the
// trapezoid rule, independent of the analytic shell sums.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mixbound/spectrum.hpp"

namespace mixbound {

/// Uniform grid lo, lo + h, ..., hi with `points` nodes.
struct Axis {
  double lo = -12.0;
  double hi = 12.0;
  int points = 1201;

  static Axis symmetric(double half_width, int points);

  double step() const noexcept { return (hi - lo) / (points - 1); }
  double at(int i) const noexcept { return i == points - 1 ? hi : lo + i * step(); }
  double trapezoid_weight(int i) const noexcept {
    return (i == 0 || i == points - 1) ? 0.5 * step() : step();
  }
  std::vector<double> nodes() const;
  std::vector<double> trapezoid_weights() const;
};

/// Default sampling for a dimension: s = 1 uses [-12/k, 12/k] with 1201 nodes,
/// s = 2 uses [-8/k, 8/k] with 41 nodes per axis to keep points^4 storage small.
Axis default_axis(int s, double k);

class OscillatorBasis {
public:
  OscillatorBasis(double k, int n_max);

  double k() const noexcept { return k_; }
  int n_max() const noexcept { return n_max_; }

  /// psi_n(x); throws RangeError for n outside [0, n_max].
  double mode_function(int n, double x) const;

  /// Row-major (n_max + 1) x axis.points table of psi_n at the axis nodes.
  std::vector<double> tabulate(const Axis& axis) const;

  /// Trapezoid-rule Gram matrix of the modes on the axis.
  Eigen::MatrixXd overlap(const Axis& axis) const;

private:
  double k_;
  int n_max_;
};

/// Sampled rho(X, X'). Sites are flattened in row-major order over the
/// coordinates, so for s = 2 the value index is ((x1 * P + x2) * P + x1') * P + x2'.
class DensityMatrixGrid {
public:
  DensityMatrixGrid(int s, Axis axis, double k, std::int64_t occupied_shells);

  int dimension() const noexcept { return s_; }
  const Axis& axis() const noexcept { return axis_; }
  double k() const noexcept { return k_; }
  std::int64_t occupied_shells() const noexcept { return occupied_shells_; }

  /// Number of grid sites, points^s.
  std::size_t sites() const noexcept { return sites_; }
  double operator()(std::size_t row, std::size_t col) const noexcept {
    return values_[row * sites_ + col];
  }
  double& operator()(std::size_t row, std::size_t col) noexcept {
    return values_[row * sites_ + col];
  }
  const double* row(std::size_t r) const noexcept { return values_.data() + r * sites_; }
  double* row(std::size_t r) noexcept { return values_.data() + r * sites_; }

  /// Coordinates of a site, one per dimension.
  std::vector<double> site_coordinates(std::size_t site) const;
  /// Product trapezoid weight of each site.
  std::vector<double> site_weights() const;

  /// Quadrature of rho(X, X).
  double trace() const;
  /// max |rho(X, X') - rho(X', X)|.
  double symmetry_residual() const;
  /// max |rho(x1,x2,x1',x2') - rho(x2,x1,x2',x1')|; zero for s = 1.
  double swap_symmetry_residual() const;

private:
  int s_;
  Axis axis_;
  double k_;
  std::int64_t occupied_shells_;
  std::size_t sites_;
  std::vector<double> values_;
};

/// Half-width an axis needs to hold an L-shell state: (sqrt(2L + s) + 4) / k.
double required_half_width(int s, std::int64_t layers, double k);

DensityMatrixGrid build_density_grid(const ModeSpectrum& spec, const Axis& axis, int threads = 0);

enum class MomentumRoute { spectral, finite_difference };

struct QuadratureMoments {
  double delta_x = 0.0;
  double delta_q = 0.0;
  double n_eff = 0.0;
  double trace = 0.0;
  bool accuracy_warning = false;
  std::string note;

  double product() const noexcept { return delta_x * delta_q; }
};

QuadratureMoments quadrature_moments(const DensityMatrixGrid& grid,
                                     MomentumRoute route = MomentumRoute::spectral,
                                     int threads = 0);

}  // namespace mixbound
