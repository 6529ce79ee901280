#include "locpriv/montecarlo.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "locpriv/errors.hpp"
#include "locpriv/parallel.hpp"
#include "locpriv/rng.hpp"

namespace locpriv {

std::string estimator_kind_name(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::Map: return "map";
    case EstimatorKind::Prior: return "prior";
    case EstimatorKind::Constant: return "constant";
    case EstimatorKind::ConstantMax: return "constant_max";
  }
  return "?";
}

namespace {

double binomial_stderr(double mean, long n) {
  return std::sqrt(mean * (1.0 - mean) / static_cast<double>(n));
}

}  // namespace

LossEstimate estimate_loss(const MarkovPrior& prior, const Scenario& scen,
                           const Mechanism& mech, EstimatorKind kind,
                           SuccessMetric metric, long n_trials,
                           std::uint64_t master_seed, int threads,
                           LocationId constant_loc) {
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  const int t = scen.t();
  if (metric.s < 0 || metric.s >= t) throw ConfigError("requires 0 <= s < t");
  if (kind == EstimatorKind::ConstantMax)
    return estimate_loss_constant_max(prior, scen, t, metric, n_trials,
                                      master_seed, {}, threads);

  // Observation-free estimators are fixed across trials.
  Estimate fixed_est;
  if (kind == EstimatorKind::Prior) fixed_est = prior_estimate(prior, t);
  if (kind == EstimatorKind::Constant)
    fixed_est = constant_estimate(constant_loc, t);
  const LogModel lm =
      kind == EstimatorKind::Map ? make_log_model(prior) : LogModel{};

  const int workers = resolve_threads(threads);
  std::vector<long> successes(workers, 0);
  parallel_chunks(n_trials, workers, [&](long b, long e, int w) {
    long hits = 0;
    for (long i = b; i < e; ++i) {
      const Trajectory traj = sample_trajectory(
          prior, t, derive_seed(master_seed, i, kStreamTrajectory));
      const Trajectory* guess = &fixed_est.traj;
      Estimate est;
      if (kind == EstimatorKind::Map) {
        const Observations obs =
            observe(traj, scen, mech, derive_seed(master_seed, i, kStreamNoise));
        est = map_estimate(lm, obs, scen, mech);
        guess = &est.traj;
      }
      hits += hamming_distance(traj, *guess) <= metric.s;
    }
    successes[w] = hits;
  });

  long total = 0;
  for (long h : successes) total += h;
  LossEstimate loss;
  loss.mean = static_cast<double>(total) / static_cast<double>(n_trials);
  loss.stderr_ = binomial_stderr(loss.mean, n_trials);
  loss.n_trials = n_trials;
  loss.kind = kind;
  loss.constant_loc = kind == EstimatorKind::Constant ? constant_loc : -1;
  return loss;
}

LossEstimate estimate_loss_constant_max(const MarkovPrior& prior,
                                        const Scenario& scen, int t,
                                        SuccessMetric metric, long n_trials,
                                        std::uint64_t master_seed,
                                        std::optional<LocationId> exclude,
                                        int threads) {
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  if (metric.s < 0 || metric.s >= t) throw ConfigError("requires 0 <= s < t");
  const int m = prior.m;

  // d(X, const_l) = T - (#steps at l), so one occupancy histogram per trial
  // scores every candidate location at once.
  const int workers = resolve_threads(threads);
  std::vector<std::vector<long>> per_chunk(workers,
                                           std::vector<long>(m, 0));
  parallel_chunks(n_trials, workers, [&](long b, long e, int w) {
    std::vector<long>& hits = per_chunk[w];
    std::vector<int> occupancy(m);
    for (long i = b; i < e; ++i) {
      const Trajectory traj = sample_trajectory(
          prior, t, derive_seed(master_seed, i, kStreamTrajectory));
      std::fill(occupancy.begin(), occupancy.end(), 0);
      for (int u = 0; u < t; ++u) ++occupancy[traj[u]];
      for (int l = 0; l < m; ++l)
        if (t - occupancy[l] <= metric.s) ++hits[l];
    }
  });

  std::vector<long> totals(m, 0);
  for (const auto& chunk : per_chunk)
    for (int l = 0; l < m; ++l) totals[l] += chunk[l];

  long best_hits = -1;
  int best_loc = -1;
  for (int l = 0; l < m; ++l) {
    if (exclude && *exclude == l) continue;
    if (totals[l] > best_hits) {
      best_hits = totals[l];
      best_loc = l;
    }
  }
  if (best_loc < 0) throw ConfigError("no candidate location remains");

  LossEstimate loss;
  loss.mean = static_cast<double>(best_hits) / static_cast<double>(n_trials);
  loss.stderr_ = binomial_stderr(loss.mean, n_trials);
  loss.n_trials = n_trials;
  loss.kind = EstimatorKind::ConstantMax;
  loss.constant_loc = best_loc;
  return loss;
}

namespace {

int as_int(double v, const std::string& what) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9)
    throw InvalidGrid(what + " must be an integer, got " + std::to_string(v));
  return static_cast<int>(r);
}

}  // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec, int threads) {
  if (spec.values.empty()) throw InvalidGrid("empty value list");
  const bool is_m = spec.param == "M";
  const bool is_s = spec.param == "s";
  const bool is_t = spec.param == "T";
  const bool is_sigma = spec.param == "sigma";
  const bool is_tau = spec.param == "tau";
  if (!is_m && !is_s && !is_t && !is_sigma && !is_tau)
    throw InvalidGrid("unknown sweep parameter '" + spec.param + "'");

  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (double value : spec.values) {
    SweepRow row;
    row.param = spec.param;
    row.value = value;
    row.m = is_m ? as_int(value, "M") : spec.fixed.m;
    row.t = is_t ? as_int(value, "T") : spec.fixed.t;
    row.s = is_s ? as_int(value, "s") : spec.fixed.s;
    row.tau = is_tau ? value : spec.fixed.tau;
    row.sigma = is_sigma ? value : spec.fixed.sigma;
    row.mechanism =
        is_sigma ? Mechanism::Kind::Gaussian : spec.fixed.mechanism;
    row.n_trials = spec.fixed.n_trials;
    row.master_seed = spec.fixed.master_seed;
    if (row.m < 1 || row.t < 1) throw InvalidGrid("M and T must be >= 1");
    if (row.s < 0 || row.s >= row.t) throw InvalidGrid("requires 0 <= s < T");
    if (row.tau <= 0) throw InvalidGrid("tau must be positive");
    if (row.mechanism == Mechanism::Kind::Gaussian && row.sigma <= 0)
      throw InvalidGrid("sigma must be positive");

    const auto t0 = std::chrono::steady_clock::now();
    const MarkovPrior prior = synthetic_prior(row.m, row.tau);
    // Schedule seed is independent of the grid index so that sweeps which
    // leave (M, T) unchanged share the schedule and the trial set.
    row.schedule_seed = derive_seed(row.master_seed, kGlobalTrial, kStreamSchedule);
    Scenario scen;
    scen.schedule = make_uniform_schedule(row.m, row.t, row.schedule_seed);
    scen.others_counts.assign(row.t, 0);
    scen.n = 1;
    const Mechanism mech = row.mechanism == Mechanism::Kind::Raw
                               ? Mechanism::raw()
                               : Mechanism::gaussian(row.sigma);

    row.map_loss = estimate_loss(prior, scen, mech, EstimatorKind::Map,
                                 {row.s}, row.n_trials, row.master_seed,
                                 threads);
    row.prior_loss = estimate_loss(prior, scen, mech, EstimatorKind::Prior,
                                   {row.s}, row.n_trials, row.master_seed,
                                   threads);
    row.constant_loss = estimate_loss_constant_max(
        prior, scen, row.t, {row.s}, row.n_trials, row.master_seed, {},
        threads);
    row.bounds = compute_bound_report(prior, scen, mech, row.s);
    row.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string sweep_csv_header() {
  return "param,value,m,t,s,tau,sigma,mechanism,n_trials,master_seed,"
         "schedule_seed,map_mean,map_stderr,prior_mean,prior_stderr,"
         "constmax_mean,constmax_stderr,constmax_loc,h_x,i_tilde,log_ns,"
         "log_q,pe_loose,pe_tight,loose_ub,tight_ub,loose_vacuous,"
         "tight_vacuous,dp_eps,wall_ms";
}

std::string sweep_row_csv(const SweepRow& row) {
  std::ostringstream out;
  out << row.param << ',' << fmt(row.value) << ',' << row.m << ',' << row.t
      << ',' << row.s << ',' << fmt(row.tau) << ',' << fmt(row.sigma) << ','
      << (row.mechanism == Mechanism::Kind::Raw ? "raw" : "gaussian") << ','
      << row.n_trials << ',' << row.master_seed << ',' << row.schedule_seed
      << ',' << fmt(row.map_loss.mean) << ',' << fmt(row.map_loss.stderr_)
      << ',' << fmt(row.prior_loss.mean) << ',' << fmt(row.prior_loss.stderr_)
      << ',' << fmt(row.constant_loss.mean) << ','
      << fmt(row.constant_loss.stderr_) << ',' << row.constant_loss.constant_loc
      << ',' << fmt(row.bounds.h_x) << ',' << fmt(row.bounds.i_tilde) << ','
      << fmt(row.bounds.log_ns) << ',' << fmt(row.bounds.log_q) << ','
      << fmt(row.bounds.pe_loose) << ',' << fmt(row.bounds.pe_tight) << ','
      << fmt(row.bounds.loose_ub) << ',' << fmt(row.bounds.tight_ub) << ','
      << (row.bounds.loose_vacuous ? 1 : 0) << ','
      << (row.bounds.tight_vacuous ? 1 : 0) << ','
      << (row.bounds.dp_eps ? fmt(*row.bounds.dp_eps) : std::string()) << ','
      << fmt(row.wall_ms);
  return out.str();
}

}  // namespace locpriv
