#pragma once

// Brute-force numerical checks of the closed-form minimal spectrum.
//
// minimize_shell() optimizes per-shell weights directly and never consults the
// closed-form weights. minimize_matrix() optimizes a full truncated density
// matrix (s = 1) to test that the optimum is diagonal in the oscillator basis.
// random_mixture_audit() samples mixtures and checks none beats the bound.

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mixbound::oracle {

inline constexpr int kDefaultRestarts = 16;

struct ShellProblem {
  int s = 1;
  double mu = 1.0;  // target purity 1/n_eff
  int shells = 8;   // truncation M
};

struct ShellSolution {
  std::vector<double> weights;  // per-shell eigenvalue, length M
  double uncertainty_product = 0.0;
  double trace_residual = 0.0;
  double purity_residual = 0.0;
  int best_restart = 0;
  std::vector<double> restart_objectives;  // NaN for restarts that failed
};

/// Minimizes Dx*Dq = 1/2 sum_m g_s(m) w_m (2m/s + 1) subject to unit trace,
/// purity mu and w >= 0. Best of `restarts` seeded starts. Throws DomainError for
/// infeasible mu, TruncationError when the support reaches shell M-1, and
/// ConvergenceError if no restart meets the 1e-8 residual limit.
ShellSolution minimize_shell(const ShellProblem& problem, std::uint64_t seed,
                             int restarts = kDefaultRestarts, int threads = 1);

struct MatrixProblem {
  int dim = 12;     // basis truncation, s = 1
  double mu = 1.0;  // target purity
};

/// Truncated position-squared matrix in the k = 1 oscillator basis.
Eigen::MatrixXd position_squared(int dim);
/// Truncated momentum-squared matrix in the k = 1 oscillator basis.
Eigen::MatrixXd momentum_squared(int dim);

struct MatrixSolution {
  Eigen::MatrixXd rho;
  double uncertainty_product = 0.0;  // sqrt(tr(rho X^2) tr(rho P^2))
  double off_diagonal_norm = 0.0;    // Frobenius norm of rho minus its diagonal
  double trace_residual = 0.0;
  double purity_residual = 0.0;
  double min_eigenvalue = 0.0;
  int best_restart = 0;
};

/// Minimizes the uncertainty functional over real symmetric PSD trace-one
/// matrices of purity mu, parametrized as rho = G G^T / tr(G G^T).
/// Throws ConvergenceError when residuals exceed 1e-6.
MatrixSolution minimize_matrix(const MatrixProblem& problem, std::uint64_t seed,
                               int restarts = kDefaultRestarts, int threads = 1);

struct AuditSample {
  std::vector<double> weights;
  double n_eff = 1.0;
  double uncertainty_product = 0.5;
  double bound = 0.5;
  double margin = 0.0;  // uncertainty_product - bound
};

struct AuditReport {
  int s = 1;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;
  AuditSample worst;
  std::vector<AuditSample> violating;  // first few offenders, for reporting
};

inline constexpr double kAuditTolerance = 1e-10;

/// Checks the bound for explicit per-shell weight vectors (normalized internally).
AuditReport audit_mixtures(int s, std::span<const std::vector<double>> mixtures, int threads = 1);

/// Samples `count` seeded random shell mixtures and audits them.
AuditReport random_mixture_audit(int s, std::size_t count, std::uint64_t seed, int threads = 1);

/// SplitMix64 step; used to derive independent per-task seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace mixbound::oracle
