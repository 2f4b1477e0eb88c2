#pragma once

// Data-parallel inner loops used by the coordinate-grid code.
//
// Each kernel has a scalar reference version and vectorized variants. The
// top-level functions dispatch at runtime to the widest instruction set the
// CPU supports; the per-ISA namespaces can be called directly for testing.
// Vector variants use fused multiply-add and a different summation order, so
// they agree with the reference to rounding, not bit for bit.

#include <cstddef>
#include <span>

namespace mixbound::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa) noexcept;

/// True when the variant is compiled in and the running CPU can execute it.
bool isa_available(Isa isa) noexcept;

/// Widest available ISA.
Isa best_isa() noexcept;

/// ISA used by the dispatching functions below.
Isa active_isa() noexcept;

/// Overrides the dispatch target. Throws std::invalid_argument if unavailable.
void set_active_isa(Isa isa);

/// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

/// sum_i w[i] * a[i] * b[i]
double weighted_dot(std::span<const double> w, std::span<const double> a,
                    std::span<const double> b);

/// y[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// Oscillator eigenfunctions psi_0..psi_{n_max} at every point of xs, scale k.
/// out is row-major (n_max + 1) x xs.size(): out[n * xs.size() + i] = psi_n(xs[i]).
void hermite_functions(double k, std::span<const double> xs, int n_max, std::span<double> out);

#define MIXBOUND_KERNEL_DECLS                                                               \
  double dot(std::span<const double> a, std::span<const double> b);                         \
  double weighted_dot(std::span<const double> w, std::span<const double> a,                 \
                      std::span<const double> b);                                           \
  void axpy(double alpha, std::span<const double> x, std::span<double> y);                  \
  void hermite_functions(double k, std::span<const double> xs, int n_max,                   \
                         std::span<double> out);

namespace scalar {
MIXBOUND_KERNEL_DECLS
}
namespace avx2 {
MIXBOUND_KERNEL_DECLS
}
namespace neon {
MIXBOUND_KERNEL_DECLS
}

#undef MIXBOUND_KERNEL_DECLS

}  // namespace mixbound::kernels
