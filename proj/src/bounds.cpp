#include "locpriv/bounds.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "locpriv/errors.hpp"
#include "locpriv/estimators.hpp"
#include "locpriv/numeric.hpp"

namespace locpriv {

double hamming_ball_logsize(int t, int m, int s) {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (s < 0 || s > t) throw ConfigError("requires 0 <= s <= t");
  if (s == 0 || m == 1) return 0.0;
  const double log_m1 = std::log(static_cast<double>(m - 1));
  std::vector<double> terms;
  terms.reserve(s + 1);
  for (int l = 0; l <= s; ++l) terms.push_back(log_binomial(t, l) + l * log_m1);
  return log_sum_exp(terms);
}

namespace {

// Marginal Pr[X_t = .] for t = 1..T; constant pi when stationary.
std::vector<Eigen::VectorXd> step_marginals(const MarkovPrior& prior, int t) {
  std::vector<Eigen::VectorXd> mu(t);
  mu[0] = prior.pi;
  for (int u = 1; u < t; ++u)
    mu[u] = prior.stationary ? prior.pi
                             : Eigen::VectorXd(prior.p.transpose() * mu[u - 1]);
  return mu;
}

double checked_prob(double v, const char* what) {
  if (v < -1e-12)
    throw ProbabilityOutOfRange(std::string(what) + " = " + std::to_string(v));
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

double mi_bound_raw(const MarkovPrior& prior, const SensorSchedule& schedule) {
  const int t = schedule.t();
  if (t < 1) throw ConfigError("schedule is empty");
  for (int u = 0; u < t; ++u)
    if (schedule.c[u] < 0 || schedule.c[u] >= prior.m)
      throw DimensionMismatch("sensor location out of range");

  const auto mu = step_marginals(prior, t);
  double total = binary_entropy(mu[0](schedule.c[0]));
  for (int u = 1; u < t; ++u) {
    const int cp = schedule.c[u - 1];
    const int cc = schedule.c[u];
    // Joint of the two indicator variables B_{t-1}, B_t.
    const double p1 = mu[u - 1](cp);                 // Pr[B_{t-1} = 1]
    const double q1 = mu[u](cc);                     // Pr[B_t = 1]
    const double p11 = checked_prob(p1 * prior.p(cp, cc), "joint(1,1)");
    const double p10 = checked_prob(p1 - p11, "joint(1,0)");
    const double p01 = checked_prob(q1 - p11, "joint(0,1)");
    const double p00 = checked_prob(1.0 - p11 - p10 - p01, "joint(0,0)");
    Eigen::Vector4d joint(p00, p01, p10, p11);
    const double h_joint = entropy(joint);
    const double h_cond = h_joint - binary_entropy(p1);  // H(B_t | B_{t-1})
    total += h_cond > 0.0 ? h_cond : 0.0;
  }
  return total;
}

double mi_bound_gaussian(const MarkovPrior& prior,
                         const SensorSchedule& schedule, double sigma) {
  if (sigma <= 0) throw ConfigError("sigma must be positive");
  const int t = schedule.t();
  if (t < 1) throw ConfigError("schedule is empty");
  const auto mu = step_marginals(prior, t);
  const double decay = std::exp(-1.0 / (2.0 * sigma * sigma));
  double total = 0.0;
  for (int u = 0; u < t; ++u) {
    const double p = mu[u](schedule.c[u]);
    double term = 0.0;
    if (p > 0.0) term -= p * std::log(p + (1.0 - p) * decay);
    if (p < 1.0) term -= (1.0 - p) * std::log((1.0 - p) + p * decay);
    total += term > 0.0 ? term : 0.0;
  }
  return total;
}

SubsetMarginalTable max_subset_marginal(const MarkovPrior& prior,
                                        const PowerCache& cache, int t) {
  if (t < 1) throw ConfigError("t must be >= 1");
  if (!prior.stationary)
    throw NotStationary("max_subset_marginal requires a stationary prior");
  if (cache.max_power() < t - 1)
    throw DimensionMismatch("power cache covers up to " +
                            std::to_string(cache.max_power()) + ", need " +
                            std::to_string(t - 1));
  const int m_locs = prior.m;

  SubsetMarginalTable table;
  table.log_f.assign(t, kNegInf);
  const Eigen::VectorXd log_pi = prior.pi.array().log();
  table.log_f[0] = log_pi.maxCoeff();
  if (t == 1) return table;

  // Log transition powers, ln P^d for d = 1..t-1.
  std::vector<Eigen::MatrixXd> log_pow(t);
  for (int d = 1; d <= t - 1; ++d)
    log_pow[d] = cache.power(d).array().log();

  // g(level, span k, last value x): best log-probability of placing `level`
  // points over a window of total span k ending in value x. Rows are k.
  Eigen::MatrixXd g_prev(t, m_locs), g_cur(t, m_locs);
  g_prev.setConstant(kNegInf);
  for (int k = 1; k <= t - 1; ++k)
    for (int x = 0; x < m_locs; ++x) {
      double best = kNegInf;
      for (int xp = 0; xp < m_locs; ++xp)
        best = std::max(best, log_pi(xp) + log_pow[k](xp, x));
      g_prev(k, x) = best;
    }
  table.log_f[1] = g_prev.maxCoeff();

  for (int level = 3; level <= t; ++level) {
    g_cur.setConstant(kNegInf);
    double f_level = kNegInf;
    for (int k = level - 1; k <= t - 1; ++k) {
      for (int x = 0; x < m_locs; ++x) {
        double best = kNegInf;
        for (int d = 1; d <= k - level + 2; ++d) {
          const auto& lp = log_pow[d];
          for (int xp = 0; xp < m_locs; ++xp) {
            const double cand = g_prev(k - d, xp) + lp(xp, x);
            if (cand > best) best = cand;
          }
        }
        g_cur(k, x) = best;
        if (best > f_level) f_level = best;
      }
    }
    table.log_f[level - 1] = f_level;
    g_prev.swap(g_cur);
  }
  return table;
}

double ball_prob_bound(const MarkovPrior& prior, const PowerCache& cache,
                       int t, int s) {
  if (s < 0 || s >= t) throw ConfigError("requires 0 <= s < t");
  if (s == 0) return prior_estimate(prior, t).log_score;
  const SubsetMarginalTable table = max_subset_marginal(prior, cache, t);
  std::vector<double> terms;
  terms.reserve(s + 1);
  for (int l = 0; l <= s; ++l)
    terms.push_back(log_binomial(t, l) + table.at(t - l));
  const double log_q = log_sum_exp(terms);
  return log_q > 0.0 ? 0.0 : log_q;  // the union bound can exceed 1
}

namespace {

// Minimum feasible point of {p in [0,1] : g(p) >= 0} for continuous g that
// is concave in p (binary entropy plus a linear term, in both solvers).
// Coarse 1e-3 scan brackets the first crossing; a ternary-search fallback
// catches feasible intervals narrower than the scan step.
FanoSolution solve_min_feasible(const std::function<double(double)>& g,
                                double tol) {
  if (tol <= 0) throw ConfigError("tol must be positive");
  if (g(0.0) >= 0.0) return {0.0, 1.0, true};

  const int kSteps = 1000;
  double lo = 0.0, hi = -1.0;
  for (int i = 1; i <= kSteps; ++i) {
    const double p = static_cast<double>(i) / kSteps;
    if (g(p) >= 0.0) {
      lo = static_cast<double>(i - 1) / kSteps;
      hi = p;
      break;
    }
  }
  if (hi < 0.0) {
    // No grid point feasible; look for a narrow interval around the max.
    double a = 0.0, b = 1.0;
    for (int it = 0; it < 200; ++it) {
      const double m1 = a + (b - a) / 3.0;
      const double m2 = b - (b - a) / 3.0;
      if (g(m1) < g(m2))
        a = m1;
      else
        b = m2;
    }
    const double peak = 0.5 * (a + b);
    // Tangent configurations (e.g. uniform prior with zero MI at s=0) have
    // their maximum exactly at 0; allow float slack before declaring the
    // whole interval infeasible.
    if (g(peak) < -1e-12) return {1.0, 0.0, false};
    lo = 0.0;
    hi = peak;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return {hi, 1.0 - hi, false};
}

}  // namespace

FanoSolution loose_fano_bound(const FanoInputs& in, double tol) {
  if (in.i_tilde < 0 || in.log_ns < 0)
    throw ConfigError("i_tilde and log_ns must be non-negative");
  if (in.h_x > in.t_log_m + 1e-9)
    throw ProbabilityOutOfRange("H(X) exceeds T ln M");
  if (in.log_ns > in.t_log_m + 1e-9)
    throw ProbabilityOutOfRange("ln N(s) exceeds T ln M");
  if (in.t_log_m - in.log_ns < 1e-12)
    throw DegenerateSpace("N(s) = M^T: the ball is the whole space");

  // ln((M^T - N)/N) via log-diff-exp, stable when N(s) is close to M^T.
  const double log_ratio = std::log(std::expm1(in.t_log_m - in.log_ns));
  const double lhs = in.h_x - in.i_tilde;
  const auto g = [&](double p) {
    return binary_entropy(p) + p * log_ratio + in.log_ns - lhs;
  };
  return solve_min_feasible(g, tol);
}

FanoSolution tight_fano_bound(double i_tilde, double log_q, double tol) {
  if (i_tilde < 0) throw ConfigError("i_tilde must be non-negative");
  if (log_q > 0) throw ProbabilityOutOfRange("log_q must be <= 0");
  const auto g = [&](double p) {
    return binary_entropy(p) + (1.0 - p) * log_q + i_tilde;
  };
  return solve_min_feasible(g, tol);
}

BoundReport compute_bound_report(const MarkovPrior& prior, const Scenario& scen,
                                 const Mechanism& mech, int s,
                                 const PowerCache* cache, double dp_delta) {
  const int t = scen.t();
  if (s < 0 || s >= t) throw ConfigError("requires 0 <= s < t");

  BoundReport rep;
  rep.h_x = prior_entropy(prior, t);
  rep.i_tilde = mech.kind == Mechanism::Kind::Raw
                    ? mi_bound_raw(prior, scen.schedule)
                    : mi_bound_gaussian(prior, scen.schedule, mech.sigma);
  rep.log_ns = hamming_ball_logsize(t, prior.m, s);
  rep.t_log_m = t * std::log(static_cast<double>(prior.m));

  if (s == 0) {
    rep.log_q = ball_prob_bound(prior, PowerCache{}, t, 0);
  } else if (cache != nullptr) {
    rep.log_q = ball_prob_bound(prior, *cache, t, s);
  } else {
    const PowerCache local = matrix_powers(prior.p, t);
    rep.log_q = ball_prob_bound(prior, local, t, s);
  }

  try {
    const FanoSolution loose = loose_fano_bound(
        {rep.h_x, rep.i_tilde, rep.log_ns, rep.t_log_m});
    rep.pe_loose = loose.pe_star;
    rep.loose_ub = loose.ub;
    rep.loose_vacuous = loose.vacuous;
  } catch (const DegenerateSpace&) {
    rep.pe_loose = 0.0;
    rep.loose_ub = 1.0;
    rep.loose_vacuous = true;
  }
  const FanoSolution tight = tight_fano_bound(rep.i_tilde, rep.log_q);
  rep.pe_tight = tight.pe_star;
  rep.tight_ub = tight.ub;
  rep.tight_vacuous = tight.vacuous;

  if (mech.kind == Mechanism::Kind::Gaussian)
    rep.dp_eps = dp_epsilon(mech.sigma, dp_delta, t);
  return rep;
}

BoundReport compute_bound_report(const MarkovPrior& prior, const Scenario& scen,
                                 const Mechanism& mech, int s,
                                 double dp_delta) {
  return compute_bound_report(prior, scen, mech, s, nullptr, dp_delta);
}

}  // namespace locpriv
