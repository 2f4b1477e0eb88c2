#pragma once

// Shell combinatorics of the s-dimensional oscillator index lattice.
//
// Shell m collects all index vectors n in N^s with n_1 + ... + n_s = m.
// Its size is g_s(m) = C(m+s-1, s-1) and the first L shells hold
// N(L) = C(L+s-1, s) modes in total.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace mixbound {

using Count = std::uint64_t;

/// Exact binomial coefficient C(n, k), or nullopt when it exceeds 64 bits.
std::optional<Count> try_binomial(std::int64_t n, std::int64_t k);

/// Number of modes in shell m. Throws DomainError for s < 1 or m < 0,
/// OverflowError when the count does not fit in 64 bits.
Count degeneracy(int s, std::int64_t m);

/// Number of modes in shells 0..L-1. Same error contract as degeneracy().
Count mode_count(int s, std::int64_t L);

/// Like mode_count() but returns nullopt instead of throwing on overflow.
std::optional<Count> try_mode_count(int s, std::int64_t L);

/// Natural log of the gamma function for x > 0.
double log_gamma(double x);

/// log(x) + log(x+1) + ... + log(x+terms-1) = lnG(x+terms) - lnG(x), summed
/// term by term so that no cancellation between large log-gammas occurs.
double log_rising_factorial(double x, int terms);

class ShellTable {
public:
  static constexpr int kDefaultMaxShell = 64;

  explicit ShellTable(int s, int max_shell = kDefaultMaxShell);

  int dimension() const noexcept { return s_; }
  int max_shell() const noexcept { return max_shell_; }

  /// g_s(m) for 0 <= m <= max_shell.
  Count degeneracy(int m) const;
  /// N(L) for 1 <= L <= max_shell + 1.
  Count cumulative(int L) const;

  std::span<const Count> degeneracies() const noexcept { return degeneracy_; }

private:
  int s_;
  int max_shell_;
  std::vector<Count> degeneracy_;
  std::vector<Count> cumulative_;  // cumulative_[L-1] = N(L)
};

}  // namespace mixbound
