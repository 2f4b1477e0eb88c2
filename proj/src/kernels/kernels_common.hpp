#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>

namespace mixbound::kernels::detail {

inline void check_same_size(std::size_t a, std::size_t b) {
  if (a != b)
    throw std::invalid_argument("kernel operands differ in length (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
}

inline void check_hermite_args(double k, std::size_t points, int n_max, std::size_t out_size) {
  if (!(k > 0.0)) throw std::invalid_argument("scale factor k must be positive");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  if (out_size < (static_cast<std::size_t>(n_max) + 1) * points)
    throw std::invalid_argument("output buffer too small for hermite_functions");
}

// psi_0 is shared by all variants so the recurrences start from identical rows.
inline void ground_row(double k, std::span<const double> xs, std::span<double> row) {
  const double norm = std::sqrt(k) / std::sqrt(std::sqrt(std::numbers::pi));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double kx = k * xs[i];
    row[i] = norm * std::exp(-0.5 * kx * kx);
  }
}

}  // namespace mixbound::kernels::detail
