// Shell-weight oracle. Deliberately independent of the closed-form spectrum:
// only shell degeneracies are shared with the rest of the library.

#include <ceres/ceres.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "mixbound/errors.hpp"
#include "mixbound/oracle.hpp"
#include "mixbound/parallel.hpp"
#include "mixbound/shells.hpp"
#include "solver_logging.hpp"

namespace mixbound::oracle {

namespace {

constexpr double kResidualLimit = 1e-8;
constexpr double kSupportThreshold = 1e-9;

struct ShellData {
  int s;
  double mu;
  std::vector<double> g;     // degeneracies
  std::vector<double> cost;  // objective coefficients, Dx*Dq = cost . w
};

ShellData make_data(const ShellProblem& p) {
  ShellData d{p.s, p.mu, {}, {}};
  for (int m = 0; m < p.shells; ++m) {
    const double g = static_cast<double>(degeneracy(p.s, m));
    d.g.push_back(g);
    d.cost.push_back(0.5 * g * (2.0 * m / p.s + 1.0));
  }
  return d;
}

struct Constraints {
  double trace;   // sum g w - 1
  double purity;  // sum g w^2 - mu
};

Constraints constraints(const ShellData& d, const std::vector<double>& w) {
  double t = 0.0, p = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) {
    t += d.g[m] * w[m];
    p += d.g[m] * w[m] * w[m];
  }
  return {t - 1.0, p - d.mu};
}

double objective(const ShellData& d, const std::vector<double>& w) {
  double acc = 0.0;
  for (std::size_t m = 0; m < w.size(); ++m) acc += d.cost[m] * w[m];
  return acc;
}

// Augmented Lagrangian in v with w = v^2 (keeps w >= 0 without bounds).
class ShellLagrangian final : public ceres::FirstOrderFunction {
public:
  ShellLagrangian(const ShellData& d, double lambda_t, double lambda_p, double penalty)
      : d_(d), lambda_t_(lambda_t), lambda_p_(lambda_p), penalty_(penalty) {}

  bool Evaluate(const double* v, double* cost, double* gradient) const override {
    const int n = NumParameters();
    double t = -1.0, p = -d_.mu, f = 0.0;
    for (int m = 0; m < n; ++m) {
      const double w = v[m] * v[m];
      t += d_.g[m] * w;
      p += d_.g[m] * w * w;
      f += d_.cost[m] * w;
    }
    cost[0] = f + lambda_t_ * t + lambda_p_ * p + 0.5 * penalty_ * (t * t + p * p);
    if (gradient) {
      const double at = lambda_t_ + penalty_ * t;
      const double ap = lambda_p_ + penalty_ * p;
      for (int m = 0; m < n; ++m) {
        const double w = v[m] * v[m];
        const double dw = d_.cost[m] + at * d_.g[m] + ap * 2.0 * d_.g[m] * w;
        gradient[m] = 2.0 * v[m] * dw;
      }
    }
    return true;
  }

  int NumParameters() const override { return static_cast<int>(d_.g.size()); }

private:
  const ShellData& d_;
  double lambda_t_, lambda_p_, penalty_;
};

struct Attempt {
  std::vector<double> w;
  double lambda_t = 0.0;
  double lambda_p = 0.0;
};

Attempt augmented_lagrangian(const ShellData& d, std::vector<double> v) {
  ceres::GradientProblemSolver::Options opts;
  opts.line_search_direction_type = ceres::LBFGS;
  opts.logging_type = ceres::SILENT;
  opts.max_num_iterations = 5000;
  opts.gradient_tolerance = 1e-14;
  opts.function_tolerance = 1e-16;
  opts.parameter_tolerance = 1e-16;

  double lambda_t = 0.0, lambda_p = 0.0, penalty = 10.0;
  double prev_violation = std::numeric_limits<double>::infinity();
  std::vector<double> w(v.size());
  // Tolerance ladder: each outer round tightens feasibility until 1e-12.
  for (int outer = 0; outer < 60; ++outer) {
    ceres::GradientProblem problem(new ShellLagrangian(d, lambda_t, lambda_p, penalty));
    ceres::GradientProblemSolver::Summary summary;
    ceres::Solve(opts, problem, v.data(), &summary);
    for (std::size_t m = 0; m < v.size(); ++m) w[m] = v[m] * v[m];
    const Constraints h = constraints(d, w);
    lambda_t += penalty * h.trace;
    lambda_p += penalty * h.purity;
    const double violation = std::max(std::abs(h.trace), std::abs(h.purity));
    if (violation < 1e-12) break;
    if (violation > 0.25 * prev_violation) penalty = std::min(penalty * 10.0, 1e10);
    prev_violation = violation;
  }
  return {w, lambda_t, lambda_p};
}

// Newton iteration on the stationarity conditions restricted to a support set,
// with shells entering or leaving the support as multiplier signs demand.
bool polish(const ShellData& d, Attempt& a) {
  const int n = static_cast<int>(a.w.size());
  double wmax = 0.0;
  for (double w : a.w) wmax = std::max(wmax, w);
  std::vector<bool> active(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) active[m] = a.w[m] > kSupportThreshold * wmax;

  for (int round = 0; round < 2 * n + 2; ++round) {
    std::vector<int> idx;
    for (int m = 0; m < n; ++m)
      if (active[m]) idx.push_back(m);
    const int k = static_cast<int>(idx.size());
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    double lt = a.lambda_t, lp = a.lambda_p;

    if (k == 0) return false;
    if (k == 1) {
      w[idx[0]] = 1.0 / d.g[idx[0]];
      // Multipliers are not unique on a vertex; choose lp = 0.
      lp = 0.0;
      lt = -d.cost[idx[0]] / d.g[idx[0]];
    } else {
      for (int m : idx) w[m] = a.w[m];
      Eigen::VectorXd F(k + 2);
      Eigen::MatrixXd J(k + 2, k + 2);
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        J.setZero();
        double t = -1.0, p = -d.mu;
        for (int i = 0; i < k; ++i) {
          const int m = idx[i];
          F(i) = d.cost[m] + lt * d.g[m] + 2.0 * lp * d.g[m] * w[m];
          J(i, i) = 2.0 * lp * d.g[m];
          J(i, k) = d.g[m];
          J(i, k + 1) = 2.0 * d.g[m] * w[m];
          J(k, i) = d.g[m];
          J(k + 1, i) = 2.0 * d.g[m] * w[m];
          t += d.g[m] * w[m];
          p += d.g[m] * w[m] * w[m];
        }
        F(k) = t;
        F(k + 1) = p;
        if (F.lpNorm<Eigen::Infinity>() < 1e-15) {
          converged = true;
          break;
        }
        const Eigen::VectorXd step = J.fullPivLu().solve(-F);
        if (!step.allFinite()) break;
        for (int i = 0; i < k; ++i) w[idx[i]] += step(i);
        lt += step(k);
        lp += step(k + 1);
      }
      if (!converged) {
        const Constraints h = constraints(d, w);
        if (std::max(std::abs(h.trace), std::abs(h.purity)) > 1e-13) return false;
      }
    }

    // Drop the most negative weight, or add the shell whose multiplier is negative.
    int worst_neg = -1;
    for (int m : idx)
      if (w[m] < 0.0 && (worst_neg < 0 || w[m] < w[worst_neg])) worst_neg = m;
    if (worst_neg >= 0) {
      active[worst_neg] = false;
      continue;
    }
    int entering = -1;
    double most_negative = -1e-12;
    for (int m = 0; m < n; ++m) {
      if (active[m]) continue;
      const double reduced = d.cost[m] + lt * d.g[m];
      if (reduced < most_negative) {
        most_negative = reduced;
        entering = m;
      }
    }
    if (entering >= 0 && k > 1) {
      active[entering] = true;
      a.w = w;
      a.w[entering] = 1e-6;
      a.lambda_t = lt;
      a.lambda_p = lp;
      continue;
    }
    a.w = w;
    a.lambda_t = lt;
    a.lambda_p = lp;
    return true;
  }
  return false;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ShellSolution minimize_shell(const ShellProblem& problem, std::uint64_t seed, int restarts,
                             int threads) {
  if (problem.s < 1) throw DomainError("dimension s must be >= 1");
  if (problem.shells < 2) throw DomainError("shell truncation M must be >= 2");
  if (restarts < 1) throw DomainError("need at least one restart");
  const double floor_mu = 1.0 / static_cast<double>(mode_count(problem.s, problem.shells));
  if (!(problem.mu <= 1.0) || !(problem.mu >= floor_mu)) {
    std::ostringstream os;
    os << "purity " << problem.mu << " infeasible with " << problem.shells
       << " shells (allowed [" << floor_mu << ", 1])";
    throw DomainError(os.str());
  }

  detail::quiet_solver_logging();
  const ShellData data = make_data(problem);
  const auto n = static_cast<std::size_t>(problem.shells);
  std::vector<Attempt> attempts(static_cast<std::size_t>(restarts));
  std::vector<double> scores(static_cast<std::size_t>(restarts),
                             std::numeric_limits<double>::quiet_NaN());

  parallel_for(static_cast<std::size_t>(restarts), threads, [&](std::size_t r) {
    std::mt19937_64 rng(mix_seed(seed, r));
    std::vector<double> v(n);
    double norm = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      v[m] = 0.1 + 0.9 * uniform01(rng);
      norm += data.g[m] * v[m] * v[m];
    }
    for (double& x : v) x /= std::sqrt(norm);

    Attempt a = augmented_lagrangian(data, v);
    Attempt polished = a;
    if (polish(data, polished)) a = polished;
    const Constraints h = constraints(data, a.w);
    bool ok = std::abs(h.trace) < kResidualLimit && std::abs(h.purity) < kResidualLimit;
    for (double w : a.w) ok = ok && w >= 0.0;
    attempts[r] = a;
    if (ok) scores[r] = objective(data, a.w);
  });

  int best = -1;
  for (int r = 0; r < restarts; ++r) {
    if (std::isnan(scores[r])) continue;
    if (best < 0 || scores[r] < scores[best]) best = r;
  }
  if (best < 0) {
    const Constraints h = constraints(data, attempts[0].w);
    throw ConvergenceError("shell oracle: no restart met the residual limit", h.trace, h.purity);
  }

  ShellSolution out;
  out.weights = attempts[best].w;
  out.uncertainty_product = scores[best];
  const Constraints h = constraints(data, out.weights);
  out.trace_residual = h.trace;
  out.purity_residual = h.purity;
  out.best_restart = best;
  out.restart_objectives = scores;
  double wmax = 0.0;
  for (double w : out.weights) wmax = std::max(wmax, w);
  if (out.weights.back() > kSupportThreshold * wmax) {
    std::ostringstream os;
    os << "shell oracle support reaches the last retained shell (M=" << problem.shells
       << "); raise M";
    throw TruncationError(os.str());
  }
  return out;
}

}  // namespace mixbound::oracle
