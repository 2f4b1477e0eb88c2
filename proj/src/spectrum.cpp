#include "mixbound/spectrum.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "mixbound/errors.hpp"
#include "mixbound/shells.hpp"

namespace mixbound {

namespace {

// Relative spread within which two bound values are treated as equal when
// picking L. Neighbouring layer counts can differ by far less than rounding.
constexpr double kTieTolerance = 1e-14;

void check_request(int s, double n_eff) {
  if (s < 1) throw DomainError("dimension s must be >= 1, got " + std::to_string(s));
  if (!(n_eff >= 1.0) || !std::isfinite(n_eff)) {
    std::ostringstream os;
    os << "n_eff must be a finite value >= 1, got " << n_eff;
    throw DomainError(os.str());
  }
}

double mode_count_or_inf(int s, std::int64_t L) {
  auto n = try_mode_count(s, L);
  return n ? static_cast<double>(*n) : std::numeric_limits<double>::infinity();
}

bool upper_condition(int s, double n_eff, std::int64_t L) {
  return n_eff <= mode_count_or_inf(s, L) * (1.0 + kAdmissibilityTolerance);
}

bool lower_condition(int s, double n_eff, std::int64_t L) {
  return n_eff > layer_lower_limit(s, L) * (1.0 + kAdmissibilityTolerance);
}

// Smallest L >= 1 with pred(L) true, for a predicate monotone false -> true.
template <class Pred>
std::int64_t first_true(Pred pred) {
  if (pred(1)) return 1;
  std::int64_t bad = 1;
  std::int64_t good = 2;
  while (!pred(good)) {
    bad = good;
    if (good > std::numeric_limits<std::int64_t>::max() / 4)
      throw RangeError("layer search exceeded the 64-bit index range");
    good *= 2;
  }
  while (good - bad > 1) {
    const std::int64_t mid = bad + (good - bad) / 2;
    (pred(mid) ? good : bad) = mid;
  }
  return good;
}

}  // namespace

SpectrumRequest SpectrumRequest::from_mu(int s, double mu) {
  if (!(mu > 0.0 && mu <= 1.0)) throw DomainError("purity mu must lie in (0, 1]");
  return SpectrumRequest{s, 1.0 / mu};
}

double layer_lower_limit(int s, std::int64_t L) {
  if (L < 1) throw DomainError("layer count must be >= 1");
  if (L == 1) return 0.0;
  auto c = try_binomial(L + s - 1, s + 1);
  if (!c) return std::numeric_limits<double>::infinity();
  return static_cast<double>(*c) * static_cast<double>(s + 2) /
         static_cast<double>(s + 2 * (L - 1));
}

LayerRange admissible_layers(int s, double n_eff) {
  check_request(s, n_eff);
  LayerRange r;
  r.lo = first_true([&](std::int64_t L) { return upper_condition(s, n_eff, L); });
  // lower_condition is monotone true -> false in L.
  r.hi = first_true([&](std::int64_t L) { return !lower_condition(s, n_eff, L); }) - 1;
  if (r.empty()) {
    std::ostringstream os;
    os << "empty admissible layer interval for s=" << s << ", n_eff=" << n_eff;
    throw ConsistencyError(os.str());
  }
  return r;
}

double bound_at_layer(int s, double n_eff, std::int64_t L) {
  check_request(s, n_eff);
  if (L < 1) throw DomainError("layer count must be >= 1");
  if (L == 1) return 0.5;
  const double sd = s;
  const double Ld = static_cast<double>(L);
  const double gap = std::max(0.0, static_cast<double>(mode_count(s, L)) - n_eff);
  const double head = (2.0 * Ld + sd - 1.0) / (2.0 * (sd + 1.0));
  const double tail = std::sqrt(gap * (Ld + sd) * (Ld - 1.0)) /
                      ((sd + 1.0) * std::sqrt(n_eff * sd * (sd + 2.0)));
  return head - tail;
}

std::int64_t select_layer(int s, double n_eff, LayerRange& admissible) {
  admissible = admissible_layers(s, n_eff);
  std::int64_t best = admissible.lo;
  double best_value = bound_at_layer(s, n_eff, best);
  for (std::int64_t L = admissible.lo + 1; L <= admissible.hi; ++L) {
    const double v = bound_at_layer(s, n_eff, L);
    if (v <= best_value + kTieTolerance * std::abs(best_value)) {
      best = L;
      best_value = std::min(v, best_value);
    }
  }
  return best;
}

std::int64_t select_layer(int s, double n_eff) {
  LayerRange unused;
  return select_layer(s, n_eff, unused);
}

double shell_weight_formula(int s, double n_eff, std::int64_t L, std::int64_t m) {
  check_request(s, n_eff);
  if (L < 1 || m < 0) throw DomainError("layer count must be >= 1 and shell index >= 0");
  const double total = static_cast<double>(mode_count(s, L));
  if (L == 1) return 1.0 / total;
  const double sd = s;
  const double Ld = static_cast<double>(L);
  const double gap = std::max(0.0, total - n_eff);
  const double slope = std::sqrt(gap * (sd + 2.0)) /
                       std::sqrt(n_eff * sd * (Ld + sd) * (Ld - 1.0));
  const double offset = (Ld - 1.0) * sd - static_cast<double>(m) * (sd + 1.0);
  return (1.0 + offset * slope) / total;
}

double ModeSpectrum::trace_residual() const {
  double acc = 0.0;
  for (std::size_t m = 0; m < shell_weight.size(); ++m)
    acc += static_cast<double>(degeneracy(s, static_cast<std::int64_t>(m))) * shell_weight[m];
  return acc - 1.0;
}

double ModeSpectrum::purity_residual() const {
  double acc = 0.0;
  for (std::size_t m = 0; m < shell_weight.size(); ++m)
    acc += static_cast<double>(degeneracy(s, static_cast<std::int64_t>(m))) * shell_weight[m] *
           shell_weight[m];
  return acc - 1.0 / n_eff;
}

ModeSpectrum build_spectrum_at_layer(int s, double n_eff, std::int64_t L, double k) {
  check_request(s, n_eff);
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("scale factor k must be positive");
  const LayerRange admissible = admissible_layers(s, n_eff);
  if (!admissible.contains(L)) {
    std::ostringstream os;
    os << "layer count " << L << " is not admissible for s=" << s << ", n_eff=" << n_eff
       << " (admissible: " << admissible.lo << ".." << admissible.hi << ")";
    throw DomainError(os.str());
  }

  ModeSpectrum spec;
  spec.s = s;
  spec.layers = L;
  spec.n_eff = n_eff;
  spec.k = k;
  spec.shell_weight.resize(static_cast<std::size_t>(L));
  if (L == 1) {
    spec.shell_weight[0] = 1.0;
  } else {
    for (std::int64_t m = 0; m < L; ++m)
      spec.shell_weight[static_cast<std::size_t>(m)] = shell_weight_formula(s, n_eff, L, m);
  }

  const double tr = spec.trace_residual();
  const double pu = spec.purity_residual();
  bool ordered = true;
  for (std::size_t m = 0; m < spec.shell_weight.size(); ++m) {
    const double w = spec.shell_weight[m];
    if (!(w >= 0.0 && w <= 1.0)) ordered = false;
    if (m > 0 && w > spec.shell_weight[m - 1]) ordered = false;
  }
  if (!(std::abs(tr) <= kSpectrumResidualLimit) || !(std::abs(pu) <= kSpectrumResidualLimit) ||
      !ordered) {
    std::ostringstream os;
    os << "spectrum for s=" << s << ", n_eff=" << n_eff << ", L=" << L
       << " violates its invariants (trace residual " << tr << ", purity residual " << pu
       << (ordered ? "" : ", weights out of order or range") << ")";
    throw ConsistencyError(os.str());
  }
  return spec;
}

ModeSpectrum build_spectrum(int s, double n_eff, double k) {
  return build_spectrum_at_layer(s, n_eff, select_layer(s, n_eff), k);
}

Moments shell_moments(int s, const std::vector<double>& weights, double k) {
  if (s < 1) throw DomainError("dimension s must be >= 1");
  if (!(k > 0.0)) throw DomainError("scale factor k must be positive");
  const double sd = s;
  double energy = 0.0;  // sum g w (m + s/2)
  double purity = 0.0;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    const double g = static_cast<double>(degeneracy(s, static_cast<std::int64_t>(m)));
    energy += g * weights[m] * (static_cast<double>(m) + 0.5 * sd);
    purity += g * weights[m] * weights[m];
  }
  const double per_dim = energy / sd;
  Moments out;
  out.delta_x = std::sqrt(per_dim) / k;
  out.delta_q = std::sqrt(per_dim) * k;
  out.n_eff = 1.0 / purity;
  return out;
}

Moments spectrum_moments(const ModeSpectrum& spec) {
  return shell_moments(spec.s, spec.shell_weight, spec.k);
}

}  // namespace mixbound
