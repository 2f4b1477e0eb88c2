#include "mixbound/shells.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mixbound/errors.hpp"

namespace mixbound {

namespace {
__extension__ typedef unsigned __int128 Wide;
}  // namespace

std::optional<Count> try_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return Count{0};
  if (k > n - k) k = n - k;
  // C(n-k+i, i) grows with i, so the first intermediate that overflows
  // proves the final value overflows too.
  Wide r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r = r * static_cast<Wide>(n - k + i) / static_cast<Wide>(i);
    if (r > std::numeric_limits<Count>::max()) return std::nullopt;
  }
  return static_cast<Count>(r);
}

namespace {

void check_dimension(int s) {
  if (s < 1) throw DomainError("dimension s must be >= 1, got " + std::to_string(s));
}

}  // namespace

Count degeneracy(int s, std::int64_t m) {
  check_dimension(s);
  if (m < 0) throw DomainError("shell index must be >= 0, got " + std::to_string(m));
  auto g = try_binomial(m + s - 1, s - 1);
  if (!g)
    throw OverflowError("degeneracy g_" + std::to_string(s) + "(" + std::to_string(m) +
                        ") exceeds 64-bit range");
  return *g;
}

std::optional<Count> try_mode_count(int s, std::int64_t L) {
  check_dimension(s);
  if (L < 1) throw DomainError("layer count must be >= 1, got " + std::to_string(L));
  return try_binomial(L + s - 1, s);
}

Count mode_count(int s, std::int64_t L) {
  auto n = try_mode_count(s, L);
  if (!n)
    throw OverflowError("mode count N(" + std::to_string(L) + ") for s=" + std::to_string(s) +
                        " exceeds 64-bit range");
  return *n;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
#if defined(__GLIBC__)
  // lgamma() writes the global signgam; the reentrant form keeps this thread-safe.
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double log_rising_factorial(double x, int terms) {
  if (!(x > 0.0)) throw DomainError("log_rising_factorial requires x > 0");
  if (terms < 0) throw DomainError("log_rising_factorial requires terms >= 0");
  double acc = 0.0;
  for (int j = 0; j < terms; ++j) acc += std::log(x + j);
  return acc;
}

ShellTable::ShellTable(int s, int max_shell) : s_(s), max_shell_(max_shell) {
  check_dimension(s);
  if (max_shell < 0) throw DomainError("max_shell must be >= 0");
  degeneracy_.reserve(static_cast<std::size_t>(max_shell) + 1);
  cumulative_.reserve(static_cast<std::size_t>(max_shell) + 1);
  Count running = 0;
  for (int m = 0; m <= max_shell; ++m) {
    const Count g = mixbound::degeneracy(s, m);
    if (__builtin_add_overflow(running, g, &running))
      throw OverflowError("cumulative mode count overflows at shell " + std::to_string(m));
    degeneracy_.push_back(g);
    cumulative_.push_back(running);
  }
}

Count ShellTable::degeneracy(int m) const {
  if (m < 0 || m > max_shell_)
    throw RangeError("shell " + std::to_string(m) + " outside table [0, " +
                     std::to_string(max_shell_) + "]");
  return degeneracy_[static_cast<std::size_t>(m)];
}

Count ShellTable::cumulative(int L) const {
  if (L < 1 || L > max_shell_ + 1)
    throw RangeError("layer count " + std::to_string(L) + " outside table [1, " +
                     std::to_string(max_shell_ + 1) + "]");
  return cumulative_[static_cast<std::size_t>(L - 1)];
}

}  // namespace mixbound
