#include <cmath>
#include <stdexcept>

#include "kernels_common.hpp"
#include "mixbound/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define MIXBOUND_AVX2_TARGET __attribute__((target("avx2,fma")))

namespace mixbound::kernels::avx2 {

namespace {

MIXBOUND_AVX2_TARGET inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

MIXBOUND_AVX2_TARGET double dot(std::span<const double> a, std::span<const double> b) {
  detail::check_same_size(a.size(), b.size());
  const std::size_t n = a.size();
  const double* pa = a.data();
  const double* pb = b.data();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += pa[i] * pb[i];
  return acc;
}

MIXBOUND_AVX2_TARGET double weighted_dot(std::span<const double> w, std::span<const double> a,
                                         std::span<const double> b) {
  detail::check_same_size(w.size(), a.size());
  detail::check_same_size(a.size(), b.size());
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d wa0 = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(a.data() + i));
    const __m256d wa1 =
        _mm256_mul_pd(_mm256_loadu_pd(w.data() + i + 4), _mm256_loadu_pd(a.data() + i + 4));
    acc0 = _mm256_fmadd_pd(wa0, _mm256_loadu_pd(b.data() + i), acc0);
    acc1 = _mm256_fmadd_pd(wa1, _mm256_loadu_pd(b.data() + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w.data() + i), _mm256_loadu_pd(a.data() + i));
    acc0 = _mm256_fmadd_pd(wa, _mm256_loadu_pd(b.data() + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += w[i] * a[i] * b[i];
  return acc;
}

MIXBOUND_AVX2_TARGET void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  detail::check_same_size(x.size(), y.size());
  const std::size_t n = x.size();
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y.data() + i);
    _mm256_storeu_pd(y.data() + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x.data() + i), vy));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

MIXBOUND_AVX2_TARGET void hermite_functions(double k, std::span<const double> xs, int n_max,
                                            std::span<double> out) {
  const std::size_t n = xs.size();
  detail::check_hermite_args(k, n, n_max, out.size());
  detail::ground_row(k, xs, out.first(n));
  if (n_max == 0) return;

  const double* x = xs.data();
  const __m256d vk = _mm256_set1_pd(k);
  {
    const double* p0 = out.data();
    double* p1 = out.data() + n;
    const __m256d c = _mm256_set1_pd(std::sqrt(2.0) * k);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
      _mm256_storeu_pd(p1 + i,
                       _mm256_mul_pd(_mm256_mul_pd(c, _mm256_loadu_pd(x + i)), _mm256_loadu_pd(p0 + i)));
    for (; i < n; ++i) p1[i] = std::sqrt(2.0) * k * x[i] * p0[i];
  }
  for (int m = 2; m <= n_max; ++m) {
    const double* prev2 = out.data() + static_cast<std::size_t>(m - 2) * n;
    const double* prev = out.data() + static_cast<std::size_t>(m - 1) * n;
    double* cur = out.data() + static_cast<std::size_t>(m) * n;
    const double a = std::sqrt(2.0 / m);
    const double b = std::sqrt((m - 1.0) / m);
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
      const __m256d kx = _mm256_mul_pd(va, _mm256_mul_pd(vk, _mm256_loadu_pd(x + i)));
      const __m256d tail = _mm256_mul_pd(vb, _mm256_loadu_pd(prev2 + i));
      _mm256_storeu_pd(cur + i, _mm256_fmsub_pd(kx, _mm256_loadu_pd(prev + i), tail));
    }
    for (; i < n; ++i) cur[i] = a * k * x[i] * prev[i] - b * prev2[i];
  }
}

}  // namespace mixbound::kernels::avx2

#else

namespace mixbound::kernels::avx2 {

[[noreturn]] static void unavailable() {
  throw std::logic_error("AVX2 kernels are not compiled for this architecture");
}

double dot(std::span<const double>, std::span<const double>) { unavailable(); }
double weighted_dot(std::span<const double>, std::span<const double>, std::span<const double>) {
  unavailable();
}
void axpy(double, std::span<const double>, std::span<double>) { unavailable(); }
void hermite_functions(double, std::span<const double>, int, std::span<double>) { unavailable(); }

}  // namespace mixbound::kernels::avx2

#endif
