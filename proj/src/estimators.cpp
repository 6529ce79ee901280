#include "locpriv/estimators.hpp"

#include <cmath>
#include <string>

#include "locpriv/errors.hpp"
#include "locpriv/numeric.hpp"

namespace locpriv {

int hamming_distance(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw DimensionMismatch("trajectory lengths differ");
  int d = 0;
  for (size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

LogModel make_log_model(const MarkovPrior& prior) {
  LogModel lm;
  lm.log_pi = prior.pi.array().log();
  lm.log_p = prior.p.array().log();
  return lm;
}

namespace {

// Shared Viterbi core. emission(t, x) must be cheap; tie-breaking is
// smallest index via strict greater-than everywhere.
template <class EmissionFn>
Estimate viterbi(const LogModel& lm, int t, EmissionFn&& emission,
                 bool check_columns) {
  const int m = static_cast<int>(lm.log_pi.size());
  Eigen::VectorXd f_prev(m), f_cur(m);
  Eigen::MatrixXi back(t, m);

  for (int x = 0; x < m; ++x) f_prev(x) = lm.log_pi(x) + emission(0, x);
  if (check_columns && f_prev.maxCoeff() == kNegInf)
    throw InconsistentObservation("no location is consistent at step 0");

  for (int u = 1; u < t; ++u) {
    for (int x = 0; x < m; ++x) {
      double best = kNegInf;
      int arg = 0;
      for (int xp = 0; xp < m; ++xp) {
        const double cand = f_prev(xp) + lm.log_p(xp, x);
        if (cand > best) {
          best = cand;
          arg = xp;
        }
      }
      f_cur(x) = best + emission(u, x);
      back(u, x) = arg;
    }
    if (check_columns && f_cur.maxCoeff() == kNegInf)
      throw InconsistentObservation("no location is consistent at step " +
                                    std::to_string(u));
    f_prev.swap(f_cur);
  }

  Estimate est;
  est.traj.resize(t);
  double best = kNegInf;
  int arg = 0;
  for (int x = 0; x < m; ++x) {
    if (f_prev(x) > best) {
      best = f_prev(x);
      arg = x;
    }
  }
  est.log_score = best;
  est.traj[t - 1] = arg;
  for (int u = t - 1; u > 0; --u) est.traj[u - 1] = back(u, est.traj[u]);
  return est;
}

}  // namespace

Estimate map_estimate(const LogModel& lm, const Observations& obs,
                      const Scenario& scen, const Mechanism& mech) {
  const int t = scen.t();
  const int m = static_cast<int>(lm.log_pi.size());
  if (static_cast<int>(obs.y.size()) != t)
    throw DimensionMismatch("observations length mismatch");
  if (static_cast<int>(scen.others_counts.size()) != t)
    throw DimensionMismatch("others_counts length mismatch");
  for (int u = 0; u < t; ++u)
    if (scen.schedule.c[u] < 0 || scen.schedule.c[u] >= m)
      throw DimensionMismatch("sensor location out of range at step " +
                              std::to_string(u));

  // Emissions take only two values per step: at the sensor or not.
  std::vector<double> e_at(t), e_not(t);
  for (int u = 0; u < t; ++u) {
    e_at[u] = emission_logprob_ind(mech, obs.y[u], true, scen.others_counts[u]);
    e_not[u] = emission_logprob_ind(mech, obs.y[u], false, scen.others_counts[u]);
  }
  const auto emission = [&](int u, int x) {
    return x == scen.schedule.c[u] ? e_at[u] : e_not[u];
  };
  return viterbi(lm, t, emission, /*check_columns=*/true);
}

Estimate map_estimate(const MarkovPrior& prior, const Observations& obs,
                      const Scenario& scen, const Mechanism& mech) {
  return map_estimate(make_log_model(prior), obs, scen, mech);
}

Estimate prior_estimate(const MarkovPrior& prior, int t) {
  if (t < 1) throw ConfigError("t must be >= 1");
  const LogModel lm = make_log_model(prior);
  return viterbi(lm, t, [](int, int) { return 0.0; }, /*check_columns=*/false);
}

Estimate constant_estimate(LocationId l, int t) {
  if (t < 1) throw ConfigError("t must be >= 1");
  if (l < 0) throw DimensionMismatch("negative location");
  Estimate est;
  est.traj.assign(t, l);
  est.log_score = 0.0;
  return est;
}

double constant_success_exact(const MarkovPrior& prior, LocationId l, int t,
                              int s) {
  if (l < 0 || l >= prior.m) throw DimensionMismatch("location out of range");
  if (t < 1) throw ConfigError("t must be >= 1");
  if (s < 0 || s >= t) throw ConfigError("requires 0 <= s < t");

  // dp(x, e) = Pr[X_u = x, exactly e mismatches so far]; paths already past
  // the budget are dropped.
  const int m = prior.m;
  Eigen::MatrixXd dp = Eigen::MatrixXd::Zero(m, s + 1);
  for (int x = 0; x < m; ++x) {
    const int e = x != l;
    if (e <= s) dp(x, e) = prior.pi(x);
  }
  Eigen::MatrixXd next(m, s + 1);
  for (int u = 1; u < t; ++u) {
    next.setZero();
    for (int x = 0; x < m; ++x) {
      for (int e = 0; e <= s; ++e) {
        const double mass = dp(x, e);
        if (mass == 0.0) continue;
        for (int xn = 0; xn < m; ++xn) {
          const int en = e + (xn != l);
          if (en <= s) next(xn, en) += mass * prior.p(x, xn);
        }
      }
    }
    dp.swap(next);
  }
  double prob = dp.sum();
  if (prob > 1.0) prob = 1.0;  // rounding guard
  return prob;
}

}  // namespace locpriv
