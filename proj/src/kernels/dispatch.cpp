#include <atomic>
#include <stdexcept>
#include <string>

#include "mixbound/kernels.hpp"

namespace mixbound::kernels {

namespace {

Isa detect() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
#elif defined(__aarch64__) && defined(__ARM_NEON)
  return Isa::neon;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  if (isa == Isa::scalar) return true;
  return isa == detect();
}

Isa best_isa() noexcept { return detect(); }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa))
    throw std::invalid_argument(std::string("instruction set not available: ") + isa_name(isa));
  active().store(isa, std::memory_order_relaxed);
}

#define MIXBOUND_DISPATCH(call)             \
  switch (active_isa()) {                   \
    case Isa::avx2: return avx2::call;      \
    case Isa::neon: return neon::call;      \
    case Isa::scalar: break;                \
  }                                         \
  return scalar::call;

double dot(std::span<const double> a, std::span<const double> b) {
  MIXBOUND_DISPATCH(dot(a, b))
}

double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b) {
  MIXBOUND_DISPATCH(weighted_dot(w, a, b))
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  MIXBOUND_DISPATCH(axpy(alpha, x, y))
}

void hermite_functions(double k, std::span<const double> xs, int n_max, std::span<double> out) {
  MIXBOUND_DISPATCH(hermite_functions(k, xs, n_max, out))
}

#undef MIXBOUND_DISPATCH

}  // namespace mixbound::kernels
