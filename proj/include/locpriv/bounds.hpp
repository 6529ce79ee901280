#pragma once

#include <optional>
#include <vector>

#include "locpriv/markov.hpp"
#include "locpriv/mechanism.hpp"

namespace locpriv {

// Everything the loose Fano solver needs, all in nats.
struct FanoInputs {
  double h_x = 0.0;      // H(X)
  double i_tilde = 0.0;  // mutual-information upper bound
  double log_ns = 0.0;   // ln N(s), hamming-ball log size
  double t_log_m = 0.0;  // T ln M
};

struct FanoSolution {
  double pe_star = 0.0;  // smallest feasible error probability
  double ub = 1.0;       // 1 - pe_star, the privacy-loss upper bound
  bool vacuous = false;  // constraint already holds at pe = 0
};

// ln f(m) for m = 1..T, where f(m) is the maximum probability of any value
// assignment on any m time positions. Non-increasing in m.
struct SubsetMarginalTable {
  std::vector<double> log_f;
  double at(int m) const { return log_f.at(m - 1); }
  int t() const { return static_cast<int>(log_f.size()); }
};

// Side-by-side result of every estimator-independent quantity.
struct BoundReport {
  double h_x = 0.0;
  double i_tilde = 0.0;
  double log_ns = 0.0;
  double t_log_m = 0.0;
  double log_q = 0.0;
  double pe_loose = 0.0;
  double pe_tight = 0.0;
  double loose_ub = 1.0;
  double tight_ub = 1.0;
  bool loose_vacuous = false;
  bool tight_vacuous = false;
  std::optional<double> dp_eps;  // Gaussian mechanism only
};

// ln N(s) with N(s) = sum_{l=0}^{s} C(T,l) (M-1)^l, computed in log-space.
double hamming_ball_logsize(int t, int m, int s);

// MI upper bound for raw counts: sum_t H(B_t | B_{t-1}) with
// B_t = 1[X_t = c_t] (the t=1 term is the plain entropy).
double mi_bound_raw(const MarkovPrior& prior, const SensorSchedule& schedule);

// MI upper bound for Gaussian-noised counts, per-step closed form with
// p_t = Pr[X_t = c_t].
double mi_bound_gaussian(const MarkovPrior& prior,
                         const SensorSchedule& schedule, double sigma);

// Dynamic program over (subset size, span, last value); needs a stationary
// prior and P^1..P^{T-1}. O(T^3 M^2) beyond the cache.
SubsetMarginalTable max_subset_marginal(const MarkovPrior& prior,
                                        const PowerCache& cache, int t);

// ln of the union bound on max over centers of Pr[ball of radius s];
// exact (the prior Viterbi score) at s = 0, clamped at probability 1.
double ball_prob_bound(const MarkovPrior& prior, const PowerCache& cache,
                       int t, int s);

// Smallest pe in [0,1] with
//   h_x - i_tilde <= H(pe) + pe ln((M^T - N(s))/N(s)) + ln N(s).
// Throws DegenerateSpace when N(s) = M^T.
FanoSolution loose_fano_bound(const FanoInputs& in, double tol = 1e-9);

// Smallest pe in [0,1] with  -i_tilde <= H(pe) + (1 - pe) log_q.
FanoSolution tight_fano_bound(double i_tilde, double log_q, double tol = 1e-9);

// Assembles the full report for one individual; builds the power cache
// internally when s > 0. delta feeds the DP-epsilon comparison (Gaussian).
BoundReport compute_bound_report(const MarkovPrior& prior, const Scenario& scen,
                                 const Mechanism& mech, int s,
                                 double dp_delta = 1e-5);
BoundReport compute_bound_report(const MarkovPrior& prior, const Scenario& scen,
                                 const Mechanism& mech, int s,
                                 const PowerCache* cache, double dp_delta);

}  // namespace locpriv
