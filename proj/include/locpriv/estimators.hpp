#pragma once

#include "locpriv/markov.hpp"
#include "locpriv/mechanism.hpp"

namespace locpriv {

// An adversarial reconstruction plus its maximized objective in log-space.
// For the constant estimator log_score is 0 by convention; scores are not
// comparable across estimator kinds.
struct Estimate {
  Trajectory traj;
  double log_score = 0.0;
};

// Success threshold: the attack succeeds iff d(X, X_hat) <= s, s < T.
struct SuccessMetric {
  int s = 0;
};

int hamming_distance(const Trajectory& a, const Trajectory& b);

// Precomputed log-space model, reusable across many estimates on the same
// prior (Monte Carlo loops).
struct LogModel {
  Eigen::VectorXd log_pi;
  Eigen::MatrixXd log_p;
};
LogModel make_log_model(const MarkovPrior& prior);

// Posterior-proportional Viterbi: argmax over trajectories of
// prod_t Pr[Y_t|X_t] prod_t Pr[X_t|X_{t-1}], with backtracing. Ties broken
// by smallest location index at every argmax. O(TM^2) time, O(TM) space.
// Throws InconsistentObservation if some step admits no location (can only
// happen for Raw observations not generated by any trajectory).
Estimate map_estimate(const MarkovPrior& prior, const Observations& obs,
                      const Scenario& scen, const Mechanism& mech);
Estimate map_estimate(const LogModel& lm, const Observations& obs,
                      const Scenario& scen, const Mechanism& mech);

// Prior-only Viterbi: argmax_x Pr[X = x], same tie-breaking.
Estimate prior_estimate(const MarkovPrior& prior, int t);

// The constant guess (l, ..., l).
Estimate constant_estimate(LocationId l, int t);

// Exact Pr[sum_t 1[X_t != l] <= s] by forward DP over
// (time, location, error count); O(T s M^2) time. Test oracle and
// calibration reference for the constant estimator's Monte Carlo loss.
double constant_success_exact(const MarkovPrior& prior, LocationId l, int t,
                              int s);

}  // namespace locpriv
