#include "locpriv/oracle.hpp"

#include <cmath>
#include <string>

#include "locpriv/errors.hpp"
#include "locpriv/numeric.hpp"

namespace locpriv {

namespace {

long long checked_pow(int m, int t, long long cap) {
  long long n = 1;
  for (int i = 0; i < t; ++i) {
    n *= m;
    if (n > cap)
      throw TooLarge("M^T exceeds the oracle cap of " + std::to_string(cap));
  }
  return n;
}

// Trajectories ordered so that the first score-tie encountered matches the
// Viterbi tie-break (x_T most significant, x_1 least significant).
Trajectory decode(long long n, int m, int t) {
  Trajectory traj(t);
  for (int u = 0; u < t; ++u) {
    traj[u] = static_cast<int>(n % m);
    n /= m;
  }
  return traj;
}

double log_prior_prob(const MarkovPrior& prior, const Trajectory& traj) {
  double lp = std::log(prior.pi(traj[0]));
  for (size_t u = 1; u < traj.size(); ++u)
    lp += std::log(prior.p(traj[u - 1], traj[u]));
  return lp;
}

double prior_prob(const MarkovPrior& prior, const Trajectory& traj) {
  double p = prior.pi(traj[0]);
  for (size_t u = 1; u < traj.size(); ++u) p *= prior.p(traj[u - 1], traj[u]);
  return p;
}

}  // namespace

Estimate brute_posterior_argmax(const MarkovPrior& prior,
                                const Observations& obs, const Scenario& scen,
                                const Mechanism& mech) {
  const int t = scen.t();
  const long long total = checked_pow(prior.m, t, 1000000);
  Estimate best;
  best.log_score = kNegInf;
  for (long long n = 0; n < total; ++n) {
    const Trajectory traj = decode(n, prior.m, t);
    double score = std::log(prior.pi(traj[0])) +
                   emission_logprob(mech, obs.y[0], traj[0], scen.schedule.c[0],
                                    scen.others_counts[0]);
    for (int u = 1; u < t; ++u) {
      score += std::log(prior.p(traj[u - 1], traj[u]));
      score += emission_logprob(mech, obs.y[u], traj[u], scen.schedule.c[u],
                                scen.others_counts[u]);
    }
    if (score > best.log_score) {
      best.log_score = score;
      best.traj = traj;
    }
  }
  if (best.log_score == kNegInf)
    throw InconsistentObservation("no trajectory is consistent");
  return best;
}

Estimate brute_prior_argmax(const MarkovPrior& prior, int t) {
  const long long total = checked_pow(prior.m, t, 1000000);
  Estimate best;
  best.log_score = kNegInf;
  for (long long n = 0; n < total; ++n) {
    const Trajectory traj = decode(n, prior.m, t);
    const double score = log_prior_prob(prior, traj);
    if (score > best.log_score) {
      best.log_score = score;
      best.traj = traj;
    }
  }
  return best;
}

double brute_ball_prob(const MarkovPrior& prior, int t, int s) {
  const long long total = checked_pow(prior.m, t, 100000);
  std::vector<double> probs(total);
  std::vector<Trajectory> trajs(total);
  for (long long n = 0; n < total; ++n) {
    trajs[n] = decode(n, prior.m, t);
    probs[n] = prior_prob(prior, trajs[n]);
  }
  double best = -1.0;
  for (long long center = 0; center < total; ++center) {
    KahanSum sum;
    for (long long n = 0; n < total; ++n)
      if (hamming_distance(trajs[center], trajs[n]) <= s) sum.add(probs[n]);
    if (sum.value() > best) best = sum.value();
  }
  return best > 1.0 ? 1.0 : best;
}

double brute_max_subset_marginal(const MarkovPrior& prior, int t, int m) {
  if (m < 1 || m > t) throw ConfigError("requires 1 <= m <= t");
  const double work =
      std::exp(log_binomial(t, m)) * std::pow(static_cast<double>(prior.m), m);
  if (work > 1e6) throw TooLarge("C(T,m) M^m exceeds the oracle cap");

  // Iterate subsets {t_1 < ... < t_m} of [0, t) and all value assignments;
  // each marginal is an exact forward filter with masking.
  std::vector<int> subset(m);
  for (int i = 0; i < m; ++i) subset[i] = i;
  double best = 0.0;
  while (true) {
    std::vector<int> values(m, 0);
    while (true) {
      Eigen::VectorXd vec = prior.pi;
      int next_constraint = 0;
      for (int u = 0; u < t; ++u) {
        if (u > 0) vec = prior.p.transpose() * vec;
        if (next_constraint < m && subset[next_constraint] == u) {
          const double kept = vec(values[next_constraint]);
          vec.setZero();
          vec(values[next_constraint]) = kept;
          ++next_constraint;
        }
      }
      best = std::max(best, vec.sum());
      // odometer over value assignments
      int pos = 0;
      while (pos < m && ++values[pos] == prior.m) values[pos++] = 0;
      if (pos == m) break;
    }
    // next subset in lexicographic order
    int i = m - 1;
    while (i >= 0 && subset[i] == t - m + i) --i;
    if (i < 0) break;
    ++subset[i];
    for (int j = i + 1; j < m; ++j) subset[j] = subset[j - 1] + 1;
  }
  return std::log(best);
}

double brute_joint_entropy(const MarkovPrior& prior, int t) {
  const long long total = checked_pow(prior.m, t, 1000000);
  KahanSum h;
  for (long long n = 0; n < total; ++n) {
    const double p = prior_prob(prior, decode(n, prior.m, t));
    if (p > 0.0) h.add(-p * std::log(p));
  }
  return h.value();
}

double brute_constant_success(const MarkovPrior& prior, LocationId l, int t,
                              int s) {
  const long long total = checked_pow(prior.m, t, 1000000);
  KahanSum sum;
  for (long long n = 0; n < total; ++n) {
    const Trajectory traj = decode(n, prior.m, t);
    int errors = 0;
    for (int u = 0; u < t; ++u) errors += traj[u] != l;
    if (errors <= s) sum.add(prior_prob(prior, traj));
  }
  const double v = sum.value();
  return v > 1.0 ? 1.0 : v;
}

}  // namespace locpriv
