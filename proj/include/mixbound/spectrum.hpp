#pragma once

// Minimal-uncertainty spectrum of a mixed state with prescribed effective
// number of pure states.
//
// The density operator is diagonal in the oscillator eigenbasis. Every mode in
// shell m carries the same eigenvalue, affine and decreasing in m, and only the
// first L shells are occupied. L is picked from the admissible interval so that
// the uncertainty product is smallest.

#include <cstdint>
#include <vector>

namespace mixbound {

/// Relative tolerance applied at the boundaries of the admissibility inequalities.
inline constexpr double kAdmissibilityTolerance = 1e-12;

/// Maximum trace/purity residual accepted from build_spectrum().
inline constexpr double kSpectrumResidualLimit = 1e-10;

/// Closed integer interval [lo, hi] of layer counts.
struct LayerRange {
  std::int64_t lo = 1;
  std::int64_t hi = 0;

  bool empty() const noexcept { return hi < lo; }
  std::int64_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
  bool contains(std::int64_t L) const noexcept { return lo <= L && L <= hi; }
};

/// Request parameters. Purity mu = 1/n_eff is the global degree of coherence.
struct SpectrumRequest {
  int s = 1;
  double n_eff = 1.0;

  double mu() const noexcept { return 1.0 / n_eff; }
  static SpectrumRequest from_mu(int s, double mu);
};

struct ModeSpectrum {
  int s = 1;
  std::int64_t layers = 1;
  double n_eff = 1.0;
  double k = 1.0;
  /// shell_weight[m] is the eigenvalue shared by each of the g_s(m) modes of shell m.
  std::vector<double> shell_weight;

  /// Sum over shells of g_s(m) * weight - 1.
  double trace_residual() const;
  /// Sum over shells of g_s(m) * weight^2 - 1/n_eff.
  double purity_residual() const;
};

struct Moments {
  double delta_x = 0.0;
  double delta_q = 0.0;
  double n_eff = 0.0;

  double product() const noexcept { return delta_x * delta_q; }
};

/// Lower end of the admissible interval condition: n_eff must strictly exceed this
/// for the last occupied shell of an L-layer spectrum to keep a positive weight.
double layer_lower_limit(int s, std::int64_t L);

/// Every L satisfying both admissibility inequalities. Never empty for n_eff >= 1.
LayerRange admissible_layers(int s, double n_eff);

/// Uncertainty product Dx*Dq of the optimal L-layer spectrum, without checking
/// admissibility. The L = 1 value is 1/2.
double bound_at_layer(int s, double n_eff, std::int64_t L);

/// Admissible L minimizing bound_at_layer(); near-ties resolve toward larger L.
std::int64_t select_layer(int s, double n_eff);

/// Same as select_layer(), returning the admissible interval as well.
std::int64_t select_layer(int s, double n_eff, LayerRange& admissible);

ModeSpectrum build_spectrum(int s, double n_eff, double k = 1.0);

/// Spectrum with a caller-chosen layer count; L must be admissible.
ModeSpectrum build_spectrum_at_layer(int s, double n_eff, std::int64_t L, double k = 1.0);

/// Weight the closed form assigns to shell m of an L-layer spectrum. Valid for any
/// m >= 0, including m >= L where the physical weight is zero.
double shell_weight_formula(int s, double n_eff, std::int64_t L, std::int64_t m);

/// Widths and effective state count of a diagonal oscillator-basis mixture.
Moments spectrum_moments(const ModeSpectrum& spec);

/// Moments of arbitrary per-shell weights (each mode of shell m weighted weights[m]).
Moments shell_moments(int s, const std::vector<double>& weights, double k = 1.0);

}  // namespace mixbound
