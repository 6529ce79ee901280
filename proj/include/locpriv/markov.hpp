#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace locpriv {

// Location index in [0, M). The last index may be designated the
// "somewhere else" bucket by ingestion; that is a convention, not a
// structural property.
using LocationId = int;

// Ground-truth location sequence of the target, length T.
using Trajectory = std::vector<LocationId>;

// The adversary's knowledge of the target: initial distribution pi over M
// locations and row-stochastic transition matrix P.
struct MarkovPrior {
  int m = 0;
  Eigen::VectorXd pi;
  Eigen::MatrixXd p;
  bool stationary = false;  // whether pi P = pi within 1e-6 (max norm)
};

// Cache of P^1..P^{T-1} (index 0 holds the identity).
class PowerCache {
 public:
  PowerCache() = default;
  const Eigen::MatrixXd& power(int k) const { return powers_.at(k); }
  int max_power() const { return static_cast<int>(powers_.size()) - 1; }

 private:
  friend PowerCache matrix_powers(const Eigen::MatrixXd& p, int t);
  std::vector<Eigen::MatrixXd> powers_;
};

// Checks stochasticity within tol and packages the prior; stationary flag
// uses a fixed 1e-6 max-norm threshold on pi P - pi.
// Throws DimensionMismatch, NotStochastic, NegativeEntry.
MarkovPrior validate_prior(const Eigen::VectorXd& pi, const Eigen::MatrixXd& p,
                           double tol = 1e-9);

// Power iteration from the uniform vector with averaged iterates (tolerates
// period-2 chains). Returns pi with ||pi P - pi||_inf <= tol.
// Throws NoConvergence after max_iter.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& p,
                                        double tol = 1e-10,
                                        int max_iter = 100000);

// X_1 ~ pi, X_t | X_{t-1} ~ P row; bit-identical for identical seeds.
Trajectory sample_trajectory(const MarkovPrior& prior, int t,
                             std::uint64_t seed);

// Sequential multiplication P^k = P^{k-1} P for k = 1..t-1.
PowerCache matrix_powers(const Eigen::MatrixXd& p, int t);

// H(X) in nats: H(X_1) + sum_t H(X_t | X_{t-1}). Marginals are pi for
// stationary priors and are propagated explicitly otherwise.
double prior_entropy(const MarkovPrior& prior, int t);

// 1 - |lambda_2|, the second-largest-modulus eigenvalue of P.
// Throws EigenFailure if the eigensolver does not converge.
double spectral_gap(const Eigen::MatrixXd& p);

// One-dimensional mobility chain: P[i][j] proportional to
// exp(-|i-j| / (tau*M)), pi its stationary distribution.
MarkovPrior synthetic_prior(int m, double tau);

}  // namespace locpriv
