#include "mixbound/format.hpp"

#include <charconv>
#include <ostream>
#include <stdexcept>

#include "mixbound/shells.hpp"

namespace mixbound {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general,
                                 kSignificantDigits);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

double round_significant(double value) {
  const std::string s = format_number(value);
  double out = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  if (res.ec != std::errc()) throw std::runtime_error("number parsing failed");
  return out;
}

void write_spectrum_csv(std::ostream& os, const ModeSpectrum& spec) {
  os << "shell,degeneracy,weight,cumulative\n";
  double cumulative = 0.0;
  for (std::size_t m = 0; m < spec.shell_weight.size(); ++m) {
    const Count g = degeneracy(spec.s, static_cast<std::int64_t>(m));
    cumulative += static_cast<double>(g) * spec.shell_weight[m];
    os << m << ',' << g << ',' << format_number(spec.shell_weight[m]) << ','
       << format_number(cumulative) << '\n';
  }
}

void write_curve_csv(std::ostream& os, const std::vector<CurveRow>& rows) {
  os << "n_eff";
  if (!rows.empty()) {
    for (const CurvePoint& p : rows.front().columns) {
      const std::string d = "_s" + std::to_string(p.s);
      os << ",L" << d << ",B_strict" << d << ",B_approx" << d << ",C_strict" << d << ",C_approx"
         << d << ",C_asymptotic" << d;
    }
  }
  os << '\n';
  for (const CurveRow& row : rows) {
    os << format_number(row.n_eff);
    for (const CurvePoint& p : row.columns) {
      os << ',' << p.layers << ',' << format_number(p.strict_bound) << ','
         << format_number(p.approx_bound) << ',' << format_number(p.strict_packing) << ','
         << format_number(p.approx_packing) << ',' << format_number(p.asymptotic_packing);
    }
    os << '\n';
  }
}

}  // namespace mixbound
