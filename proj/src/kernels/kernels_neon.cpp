#include <cmath>
#include <stdexcept>

#include "kernels_common.hpp"
#include "mixbound/kernels.hpp"

#if defined(__aarch64__) && defined(__ARM_NEON)
#include <arm_neon.h>

namespace mixbound::kernels::neon {

double dot(std::span<const double> a, std::span<const double> b) {
  detail::check_same_size(a.size(), b.size());
  const std::size_t n = a.size();
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a.data() + i), vld1q_f64(b.data() + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a.data() + i + 2), vld1q_f64(b.data() + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  detail::check_same_size(w.size(), a.size());
  detail::check_same_size(a.size(), b.size());
  const std::size_t n = a.size();
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t wa = vmulq_f64(vld1q_f64(w.data() + i), vld1q_f64(a.data() + i));
    acc = vfmaq_f64(acc, wa, vld1q_f64(b.data() + i));
  }
  double out = vaddvq_f64(acc);
  for (; i < n; ++i) out += w[i] * a[i] * b[i];
  return out;
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  detail::check_same_size(x.size(), y.size());
  const std::size_t n = x.size();
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y.data() + i, vfmaq_f64(vld1q_f64(y.data() + i), va, vld1q_f64(x.data() + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void hermite_functions(double k, std::span<const double> xs, int n_max, std::span<double> out) {
  const std::size_t n = xs.size();
  detail::check_hermite_args(k, n, n_max, out.size());
  detail::ground_row(k, xs, out.first(n));
  if (n_max == 0) return;
  const double* x = xs.data();
  for (std::size_t i = 0; i < n; ++i) out[n + i] = std::sqrt(2.0) * k * x[i] * out[i];
  const float64x2_t vk = vdupq_n_f64(k);
  for (int m = 2; m <= n_max; ++m) {
    const double* prev2 = out.data() + static_cast<std::size_t>(m - 2) * n;
    const double* prev = out.data() + static_cast<std::size_t>(m - 1) * n;
    double* cur = out.data() + static_cast<std::size_t>(m) * n;
    const double a = std::sqrt(2.0 / m);
    const double b = std::sqrt((m - 1.0) / m);
    const float64x2_t va = vdupq_n_f64(a);
    const float64x2_t vnb = vdupq_n_f64(-b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      const float64x2_t kx = vmulq_f64(va, vmulq_f64(vk, vld1q_f64(x + i)));
      const float64x2_t tail = vmulq_f64(vnb, vld1q_f64(prev2 + i));
      vst1q_f64(cur + i, vfmaq_f64(tail, kx, vld1q_f64(prev + i)));
    }
    for (; i < n; ++i) cur[i] = a * k * x[i] * prev[i] - b * prev2[i];
  }
}

}  // namespace mixbound::kernels::neon

#else

namespace mixbound::kernels::neon {

[[noreturn]] static void unavailable() {
  throw std::logic_error("NEON kernels are not compiled for this architecture");
}

double dot(std::span<const double>, std::span<const double>) { unavailable(); }
double weighted_dot(std::span<const double>, std::span<const double>, std::span<const double>) {
  unavailable();
}
void axpy(double, std::span<const double>, std::span<double>) { unavailable(); }
void hermite_functions(double, std::span<const double>, int, std::span<double>) { unavailable(); }

}  // namespace mixbound::kernels::neon

#endif
