#pragma once

// Uncertainty boundary of mixed states in the (n_eff, Dx*Dq) plane.
//
// strict_bound() is the exact boundary attained by the minimal spectrum.
// approx_bound() replaces the integer layer count by a continuous parameter
// L~ and gives a smooth boundary. max_neff() is its inverse. Packing
// coefficients C(s, n_eff) = (2B)^s / n_eff rescale either boundary.

#include <cstdint>
#include <vector>

#include "mixbound/spectrum.hpp"

namespace mixbound {

struct BoundEvaluation {
  int s = 1;
  double n_eff = 1.0;
  std::int64_t layers = 1;
  LayerRange admissible;
  double bound = 0.5;    // B, lower limit of Dx*Dq
  double packing = 1.0;  // C(s, n_eff)
};

struct ApproxBound {
  int s = 1;
  double n_eff = 1.0;
  double l_tilde = 1.0;
  double bound = 0.5;  // (s + 2 L~) / (2 (s + 2))
  double packing = 1.0;
  /// |N(L~) - n_eff| / n_eff of the continuous layer equation at the returned root.
  double residual = 0.0;
};

inline constexpr double kDefaultLayerSearchLimit = 1e12;

BoundEvaluation strict_bound(int s, double n_eff);

/// Right-hand side of the continuous layer equation: the n_eff reached at L~.
double continuous_layer_neff(int s, double l_tilde);

/// Solves the continuous layer equation by bisection. Throws RangeError when
/// the root lies beyond l_max.
ApproxBound approx_bound(int s, double n_eff, double l_max = kDefaultLayerSearchLimit);

/// Largest n_eff compatible with Dx*Dq = uv on the smooth boundary. uv >= 1/2.
double max_neff(int s, double uv);

/// Large-n_eff limit of the packing coefficient, 2^(s+1) (s+1)! / (s+2)^(s+1).
double asymptotic_packing(int s);

/// (2 uv)^s / n_eff.
double packing_coefficient(int s, double n_eff, double uv);

struct CurveRequest {
  std::vector<int> dimensions{1};
  double n_eff_min = 1.0;
  double n_eff_max = 100.0;
  int points = 2;
  bool log_spacing = false;
  int threads = 1;
};

struct CurvePoint {
  int s = 1;
  std::int64_t layers = 1;
  double strict_bound = 0.5;
  double approx_bound = 0.5;
  double strict_packing = 1.0;
  double approx_packing = 1.0;
  double asymptotic_packing = 1.0;
};

struct CurveRow {
  double n_eff = 1.0;
  std::vector<CurvePoint> columns;  // one per requested dimension, in request order
};

/// Grid of n_eff values: linear or logarithmic, endpoints exact.
std::vector<double> neff_grid(double lo, double hi, int points, bool log_spacing);

/// Packing-coefficient table. Rows are ordered by n_eff regardless of threads.
std::vector<CurveRow> packing_curve(const CurveRequest& request);

}  // namespace mixbound
