#pragma once

#include "locpriv/estimators.hpp"
#include "locpriv/markov.hpp"
#include "locpriv/mechanism.hpp"

namespace locpriv {

// Brute-force references: deliberately simple, exponential-time, and sharing
// no code with the dynamic programs they check. Used by tests and by the
// CLI's --oracle cross-check on small instances. All throw TooLarge beyond
// their stated size caps.

// Enumeration argmax of the posterior-proportional objective; same
// tie-breaking order as map_estimate. Cap: M^T <= 1e6.
Estimate brute_posterior_argmax(const MarkovPrior& prior,
                                const Observations& obs, const Scenario& scen,
                                const Mechanism& mech);

// Enumeration argmax of the prior joint. Cap: M^T <= 1e6.
Estimate brute_prior_argmax(const MarkovPrior& prior, int t);

// Exact max over centers of Pr[X in radius-s hamming ball]. Cap: M^T <= 1e5.
double brute_ball_prob(const MarkovPrior& prior, int t, int s);

// Exact ln f(m): max over time subsets of size m and value assignments of
// the prior marginal. Cap: C(T,m) M^m <= 1e6.
double brute_max_subset_marginal(const MarkovPrior& prior, int t, int m);

// Exact joint entropy by enumeration (nats). Cap: M^T <= 1e6.
double brute_joint_entropy(const MarkovPrior& prior, int t);

// Exact Pr[d(X, (l,...,l)) <= s] by enumeration. Cap: M^T <= 1e6.
double brute_constant_success(const MarkovPrior& prior, LocationId l, int t,
                              int s);

}  // namespace locpriv
