#pragma once

#include <iosfwd>
#include <string>

#include "mixbound/bounds.hpp"
#include "mixbound/spectrum.hpp"

namespace mixbound {

inline constexpr int kSignificantDigits = 12;

/// Shortest general-format rendering with 12 significant digits, '.' decimal
/// separator, independent of the global locale.
std::string format_number(double value);

/// The value that format_number() prints, parsed back.
double round_significant(double value);

/// CSV with header `shell,degeneracy,weight,cumulative`.
void write_spectrum_csv(std::ostream& os, const ModeSpectrum& spec);

/// CSV with header `n_eff` then per dimension
/// `L_s<d>,B_strict_s<d>,B_approx_s<d>,C_strict_s<d>,C_approx_s<d>,C_asymptotic_s<d>`.
void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows);

}  // namespace mixbound
