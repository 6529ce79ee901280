#include "locpriv/markov.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "locpriv/errors.hpp"
#include "locpriv/numeric.hpp"
#include "locpriv/rng.hpp"

namespace locpriv {

MarkovPrior validate_prior(const Eigen::VectorXd& pi, const Eigen::MatrixXd& p,
                           double tol) {
  const int m = static_cast<int>(pi.size());
  if (m < 1) throw DimensionMismatch("pi is empty");
  if (p.rows() != m || p.cols() != m)
    throw DimensionMismatch("P is " + std::to_string(p.rows()) + "x" +
                            std::to_string(p.cols()) + ", expected " +
                            std::to_string(m) + "x" + std::to_string(m));
  if (tol <= 0) throw ConfigError("tol must be positive");

  if ((pi.array() < 0).any()) throw NegativeEntry("pi has a negative entry");
  if ((p.array() < 0).any()) throw NegativeEntry("P has a negative entry");
  if ((pi.array() > 1 + tol).any() || (p.array() > 1 + tol).any())
    throw NotStochastic("entry exceeds 1");

  if (std::abs(pi.sum() - 1.0) > tol)
    throw NotStochastic("pi sums to " + std::to_string(pi.sum()));
  for (int i = 0; i < m; ++i) {
    const double row_sum = p.row(i).sum();
    if (std::abs(row_sum - 1.0) > tol)
      throw NotStochastic("P row " + std::to_string(i) + " sums to " +
                          std::to_string(row_sum));
  }

  MarkovPrior prior;
  prior.m = m;
  prior.pi = pi;
  prior.p = p;
  const double residual = (p.transpose() * pi - pi).lpNorm<Eigen::Infinity>();
  prior.stationary = residual <= 1e-6;
  return prior;
}

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p, double tol,
                                        int max_iter) {
  const int m = static_cast<int>(p.rows());
  Eigen::VectorXd x = Eigen::VectorXd::Constant(m, 1.0 / m);
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXd y = p.transpose() * x;  // (x P) as a column vector
    if ((y - x).lpNorm<Eigen::Infinity>() <= tol) return x;
    // Averaged iterate keeps period-2 chains from oscillating forever.
    x = 0.5 * (x + y);
    x /= x.sum();
  }
  throw NoConvergence("power iteration did not reach tol=" +
                      std::to_string(tol) + " in " + std::to_string(max_iter) +
                      " iterations (periodic or reducible chain?)");
}

Trajectory sample_trajectory(const MarkovPrior& prior, int t,
                             std::uint64_t seed) {
  if (t < 1) throw ConfigError("trajectory length must be >= 1");
  Rng rng(seed);
  Trajectory traj(t);
  traj[0] = rng.categorical(prior.pi);
  for (int u = 1; u < t; ++u) traj[u] = rng.categorical(prior.p.row(traj[u - 1]));
  return traj;
}

PowerCache matrix_powers(const Eigen::MatrixXd& p, int t) {
  if (t < 2) throw ConfigError("matrix_powers requires t >= 2");
  PowerCache cache;
  cache.powers_.reserve(t);
  cache.powers_.push_back(Eigen::MatrixXd::Identity(p.rows(), p.cols()));
  cache.powers_.push_back(p);
  for (int k = 2; k <= t - 1; ++k)
    cache.powers_.push_back(cache.powers_.back() * p);
  return cache;
}

double prior_entropy(const MarkovPrior& prior, int t) {
  if (t < 1) throw ConfigError("t must be >= 1");
  // Per-row transition entropies, computed once.
  Eigen::VectorXd row_h(prior.m);
  for (int i = 0; i < prior.m; ++i) row_h(i) = entropy(prior.p.row(i).transpose());

  double h = entropy(prior.pi);
  if (prior.stationary) {
    h += (t - 1) * prior.pi.dot(row_h);
    return h;
  }
  Eigen::VectorXd mu = prior.pi;
  for (int u = 2; u <= t; ++u) {
    h += mu.dot(row_h);
    mu = prior.p.transpose() * mu;
  }
  return h;
}

double spectral_gap(const Eigen::MatrixXd& p) {
  const int m = static_cast<int>(p.rows());
  if (m == 1) return 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(p, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw EigenFailure("eigensolver did not converge");
  std::vector<double> moduli(m);
  for (int i = 0; i < m; ++i) moduli[i] = std::abs(solver.eigenvalues()(i));
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());
  double gap = 1.0 - moduli[1];
  if (gap < 0.0) gap = 0.0;  // |lambda_2| can exceed 1 by rounding
  if (gap > 1.0) gap = 1.0;
  return gap;
}

MarkovPrior synthetic_prior(int m, double tau) {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (tau <= 0) throw ConfigError("tau must be positive");
  Eigen::MatrixXd p(m, m);
  const double scale = tau * m;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) p(i, j) = std::exp(-std::abs(i - j) / scale);
    p.row(i) /= p.row(i).sum();
  }
  const Eigen::VectorXd pi = stationary_distribution(p);
  return validate_prior(pi, p);
}

}  // namespace locpriv
