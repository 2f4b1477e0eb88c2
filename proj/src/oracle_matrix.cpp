// Full-matrix oracle for s = 1.
//
// The product Dx*Dq is invariant under squeezing x -> x/k, so in the infinite
// basis its minimizers form a continuous family of non-diagonal states. The
// optimizer therefore works on the scale-fixed functional
// tr(rho (X^2 + P^2)) = Dx^2 + Dq^2, whose minimum equals 2 min Dx*Dq; the
// reported objective is the product itself, recomputed from the minimizer.

#include <ceres/ceres.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mixbound/errors.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/parallel.hpp"
#include "solver_logging.hpp"

namespace mixbound::oracle {

namespace {

constexpr double kResidualLimit = 1e-6;

class MatrixLagrangian final : public ceres::FirstOrderFunction {
public:
  MatrixLagrangian(const Eigen::MatrixXd& functional, double mu, double lambda, double penalty)
      : h_(functional), mu_(mu), lambda_(lambda), penalty_(penalty) {}

  bool Evaluate(const double* params, double* cost, double* gradient) const override {
    const auto n = h_.rows();
    const Eigen::Map<const Eigen::MatrixXd> G(params, n, n);
    const double t = G.squaredNorm();
    if (!(t > 0.0)) return false;
    const Eigen::MatrixXd rho = G * G.transpose() / t;
    const double purity = rho.squaredNorm() - mu_;
    cost[0] = (rho.cwiseProduct(h_)).sum() + lambda_ * purity + 0.5 * penalty_ * purity * purity;
    if (gradient) {
      const Eigen::MatrixXd S = h_ + 2.0 * (lambda_ + penalty_ * purity) * rho;
      const double trace_s_rho = (S.cwiseProduct(rho)).sum();
      Eigen::Map<Eigen::MatrixXd> grad(gradient, n, n);
      grad = (2.0 / t) * (S * G - trace_s_rho * G);
    }
    return true;
  }

  int NumParameters() const override { return static_cast<int>(h_.size()); }

private:
  const Eigen::MatrixXd& h_;
  double mu_, lambda_, penalty_;
};

Eigen::MatrixXd solve_once(const Eigen::MatrixXd& functional, double mu, Eigen::MatrixXd G) {
  ceres::GradientProblemSolver::Options opts;
  opts.line_search_direction_type = ceres::LBFGS;
  opts.logging_type = ceres::SILENT;
  opts.max_num_iterations = 20000;
  opts.gradient_tolerance = 1e-15;
  opts.function_tolerance = 1e-16;
  opts.parameter_tolerance = 1e-16;

  double lambda = 0.0, penalty = 10.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int outer = 0; outer < 60; ++outer) {
    ceres::GradientProblem problem(new MatrixLagrangian(functional, mu, lambda, penalty));
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(opts, problem, G.data(), &summary);
    G /= G.norm();
    const Eigen::MatrixXd rho = G * G.transpose();
    const double violation = rho.squaredNorm() - mu;
    lambda += penalty * violation;
    if (std::abs(violation) < 1e-13) break;
    if (std::abs(violation) > 0.25 * prev) penalty = std::min(penalty * 10.0, 1e10);
    prev = std::abs(violation);
  }
  return G * G.transpose() / G.squaredNorm();
}

}  // namespace

Eigen::MatrixXd position_squared(int dim) {
  Eigen::MatrixXd x2 = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    x2(n, n) = (2.0 * n + 1.0) / 2.0;
    if (n + 2 < dim) x2(n, n + 2) = x2(n + 2, n) = std::sqrt((n + 1.0) * (n + 2.0)) / 2.0;
  }
  return x2;
}

Eigen::MatrixXd momentum_squared(int dim) {
  Eigen::MatrixXd p2 = position_squared(dim);
  for (int n = 0; n + 2 < dim; ++n) {
    p2(n, n + 2) = -p2(n, n + 2);
    p2(n + 2, n) = -p2(n + 2, n);
  }
  return p2;
}

MatrixSolution minimize_matrix(const MatrixProblem& problem, std::uint64_t seed, int restarts,
                               int threads) {
  const int dim = problem.dim;
  if (dim < 2) throw DomainError("matrix oracle needs dim >= 2");
  if (restarts < 1) throw DomainError("need at least one restart");
  if (!(problem.mu <= 1.0) || !(problem.mu >= 1.0 / dim)) {
    std::ostringstream os;
    os << "purity " << problem.mu << " infeasible for dim " << dim << " (allowed [" << 1.0 / dim
       << ", 1])";
    throw DomainError(os.str());
  }

  detail::quiet_solver_logging();
  const Eigen::MatrixXd x2 = position_squared(dim);
  const Eigen::MatrixXd p2 = momentum_squared(dim);
  const Eigen::MatrixXd functional = x2 + p2;

  std::vector<Eigen::MatrixXd> rhos(static_cast<std::size_t>(restarts));
  std::vector<double> scores(static_cast<std::size_t>(restarts),
                             std::numeric_limits<double>::quiet_NaN());
  parallel_for(static_cast<std::size_t>(restarts), threads, [&](std::size_t r) {
    std::mt19937_64 rng(mix_seed(seed, r));
    Eigen::MatrixXd G(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i)
        G(i, j) = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    rhos[r] = solve_once(functional, problem.mu, G);
    const double purity_res = rhos[r].squaredNorm() - problem.mu;
    if (std::abs(purity_res) < kResidualLimit)
      scores[r] = std::sqrt((rhos[r].cwiseProduct(x2)).sum() * (rhos[r].cwiseProduct(p2)).sum());
  });

  int best = -1;
  for (int r = 0; r < restarts; ++r) {
    if (std::isnan(scores[r])) continue;
    if (best < 0 || scores[r] < scores[best]) best = r;
  }
  if (best < 0) {
    throw ConvergenceError("matrix oracle: no restart met the residual limit",
                           rhos[0].trace() - 1.0, rhos[0].squaredNorm() - problem.mu);
  }

  MatrixSolution out;
  out.rho = rhos[best];
  out.uncertainty_product = scores[best];
  out.off_diagonal_norm = (out.rho - Eigen::MatrixXd(out.rho.diagonal().asDiagonal())).norm();
  out.trace_residual = out.rho.trace() - 1.0;
  out.purity_residual = out.rho.squaredNorm() - problem.mu;
  out.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(out.rho).eigenvalues().minCoeff();
  out.best_restart = best;
  if (std::abs(out.trace_residual) > kResidualLimit || out.min_eigenvalue < -1e-10)
    throw ConvergenceError("matrix oracle: minimizer violates trace or positivity",
                           out.trace_residual, out.purity_residual);
  return out;
}

}  // namespace mixbound::oracle
