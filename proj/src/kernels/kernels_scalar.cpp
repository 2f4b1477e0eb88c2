#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kernels_common.hpp"
#include "mixbound/kernels.hpp"

namespace mixbound::kernels::scalar {

double dot(std::span<const double> a, std::span<const double> b) {
  detail::check_same_size(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  detail::check_same_size(w.size(), a.size());
  detail::check_same_size(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += w[i] * a[i] * b[i];
  return acc;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  detail::check_same_size(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void hermite_functions(double k, std::span<const double> xs, int n_max, std::span<double> out) {
  const std::size_t n = xs.size();
  detail::check_hermite_args(k, n, n_max, out.size());
  detail::ground_row(k, xs, out.first(n));
  if (n_max == 0) return;

  double* prev2 = nullptr;
  double* prev = out.data();
  double* cur = out.data() + n;
  for (std::size_t i = 0; i < n; ++i) cur[i] = std::numbers::sqrt2 * k * xs[i] * prev[i];
  for (int m = 2; m <= n_max; ++m) {
    prev2 = prev;
    prev = cur;
    cur = out.data() + static_cast<std::size_t>(m) * n;
    const double a = std::sqrt(2.0 / m);
    const double b = std::sqrt((m - 1.0) / m);
    for (std::size_t i = 0; i < n; ++i) cur[i] = a * k * xs[i] * prev[i] - b * prev2[i];
  }
}

}  // namespace mixbound::kernels::scalar
