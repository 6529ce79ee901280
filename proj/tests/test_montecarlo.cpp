#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locpriv/errors.hpp"
#include "locpriv/montecarlo.hpp"
#include "locpriv/rng.hpp"
#include "test_util.hpp"

using namespace locpriv;

namespace {

Scenario zero_scenario(int m, int t, std::uint64_t seed) {
  Scenario scen;
  scen.schedule = make_uniform_schedule(m, t, seed);
  scen.others_counts.assign(t, 0);
  scen.n = 1;
  return scen;
}

bool rows_equal_ignoring_time(const SweepRow& a, const SweepRow& b) {
  return a.param == b.param && a.value == b.value && a.m == b.m &&
         a.t == b.t && a.s == b.s && a.tau == b.tau && a.sigma == b.sigma &&
         a.schedule_seed == b.schedule_seed &&
         a.map_loss.mean == b.map_loss.mean &&
         a.prior_loss.mean == b.prior_loss.mean &&
         a.constant_loss.mean == b.constant_loss.mean &&
         a.constant_loss.constant_loc == b.constant_loss.constant_loc &&
         a.bounds.loose_ub == b.bounds.loose_ub &&
         a.bounds.tight_ub == b.bounds.tight_ub &&
         a.bounds.h_x == b.bounds.h_x && a.bounds.log_q == b.bounds.log_q;
}

}  // namespace

TEST_CASE("estimate_loss in degenerate worlds") {
  // M = 1: every estimator is always right
  const MarkovPrior m1 = synthetic_prior(1, 0.5);
  const Scenario scen1 = zero_scenario(1, 4, 3);
  for (EstimatorKind kind : {EstimatorKind::Map, EstimatorKind::Prior,
                             EstimatorKind::Constant, EstimatorKind::ConstantMax}) {
    const LossEstimate loss =
        estimate_loss(m1, scen1, Mechanism::raw(), kind, {1}, 50, 9);
    CHECK(loss.mean == 1.0);
    CHECK(loss.stderr_ == 0.0);
  }

  // frozen chain, prior estimator, s = 0
  Eigen::VectorXd e2(3);
  e2 << 0, 0, 1;
  const MarkovPrior frozen =
      validate_prior(e2, Eigen::MatrixXd::Identity(3, 3));
  const Scenario scen2 = zero_scenario(3, 5, 4);
  const LossEstimate loss = estimate_loss(frozen, scen2, Mechanism::raw(),
                                          EstimatorKind::Prior, {0}, 100, 11);
  CHECK(loss.mean == 1.0);
}

TEST_CASE("constant-estimator MC agrees with the exact DP") {
  Rng rng(71);
  const MarkovPrior prior = test_util::random_prior(rng, 3);
  const Scenario scen = zero_scenario(3, 5, 5);
  const long n = 100000;
  for (LocationId l = 0; l < 3; ++l) {
    const LossEstimate mc =
        estimate_loss(prior, scen, Mechanism::raw(), EstimatorKind::Constant,
                      {2}, n, 31, 0, l);
    const double exact = constant_success_exact(prior, l, 5, 2);
    CHECK(std::abs(mc.mean - exact) <= 3.0 * mc.stderr_ + 1e-12);
    CHECK(mc.stderr_ ==
          doctest::Approx(std::sqrt(mc.mean * (1 - mc.mean) / n))
              .epsilon(1e-12));
  }
}

TEST_CASE("constant_max picks the concentrated location") {
  // pi strongly concentrated on location 1
  Eigen::VectorXd pi(3);
  pi << 0.05, 0.92, 0.03;
  Eigen::MatrixXd p(3, 3);
  p << 0.9, 0.1, 0.0, 0.02, 0.96, 0.02, 0.0, 0.1, 0.9;
  const MarkovPrior prior = validate_prior(pi, p);
  const Scenario scen = zero_scenario(3, 5, 6);
  const LossEstimate best = estimate_loss_constant_max(
      prior, scen, 5, {1}, 10000, 13);
  CHECK(best.constant_loc == 1);

  // exact per-location values rank the same way
  double exact_best = constant_success_exact(prior, 1, 5, 1);
  CHECK(std::abs(best.mean - exact_best) <= 3.0 * best.stderr_ + 1e-12);

  // excluding the argmax gives the second-best location
  const LossEstimate second = estimate_loss_constant_max(
      prior, scen, 5, {1}, 10000, 13, LocationId{1});
  CHECK(second.constant_loc != 1);
  const double exact_second =
      std::max(constant_success_exact(prior, 0, 5, 1),
               constant_success_exact(prior, 2, 5, 1));
  CHECK(std::abs(second.mean - exact_second) <= 3.0 * second.stderr_ + 1e-12);

  // M = 1 with no exclusion equals the single constant estimator
  const MarkovPrior m1 = synthetic_prior(1, 0.5);
  const LossEstimate only = estimate_loss_constant_max(
      m1, zero_scenario(1, 3, 7), 3, {0}, 100, 5);
  CHECK(only.mean == 1.0);
  CHECK(only.constant_loc == 0);
}

TEST_CASE("MAP beats the prior estimator given informative observations") {
  const MarkovPrior prior = synthetic_prior(8, 0.15);
  const Scenario scen = zero_scenario(8, 6, 21);
  const long n = 4000;
  const LossEstimate map_loss = estimate_loss(
      prior, scen, Mechanism::raw(), EstimatorKind::Map, {1}, n, 77);
  const LossEstimate prior_loss = estimate_loss(
      prior, scen, Mechanism::raw(), EstimatorKind::Prior, {1}, n, 77);
  const double combined =
      std::sqrt(map_loss.stderr_ * map_loss.stderr_ +
                prior_loss.stderr_ * prior_loss.stderr_);
  CHECK(map_loss.mean >= prior_loss.mean - 3.0 * combined);
}

TEST_CASE("threaded and single-threaded runs agree exactly") {
  const MarkovPrior prior = synthetic_prior(6, 0.3);
  const Scenario scen = zero_scenario(6, 5, 8);
  const LossEstimate one = estimate_loss(prior, scen, Mechanism::gaussian(1.0),
                                         EstimatorKind::Map, {1}, 500, 19, 1);
  const LossEstimate four = estimate_loss(prior, scen, Mechanism::gaussian(1.0),
                                          EstimatorKind::Map, {1}, 500, 19, 4);
  CHECK(one.mean == four.mean);
}

TEST_CASE("sweep of size one equals direct calls") {
  SweepSpec spec;
  spec.param = "s";
  spec.values = {1};
  spec.fixed.m = 6;
  spec.fixed.t = 5;
  spec.fixed.tau = 0.2;
  spec.fixed.n_trials = 300;
  spec.fixed.master_seed = 99;
  const auto rows = sweep(spec);
  REQUIRE(rows.size() == 1);

  const MarkovPrior prior = synthetic_prior(6, 0.2);
  Scenario scen;
  scen.schedule = make_uniform_schedule(
      6, 5, derive_seed(99, kGlobalTrial, kStreamSchedule));
  scen.others_counts.assign(5, 0);
  const LossEstimate expect = estimate_loss(
      prior, scen, Mechanism::raw(), EstimatorKind::Map, {1}, 300, 99);
  CHECK(rows[0].map_loss.mean == expect.mean);
}

TEST_CASE("sweep over s is exactly monotone on shared seeds") {
  SweepSpec spec;
  spec.param = "s";
  spec.values = {0, 1, 2, 3, 4};
  spec.fixed.m = 8;
  spec.fixed.t = 5;
  spec.fixed.n_trials = 300;
  spec.fixed.master_seed = 7;
  const auto rows = sweep(spec);
  for (size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].map_loss.mean >= rows[i - 1].map_loss.mean);
    CHECK(rows[i].prior_loss.mean >= rows[i - 1].prior_loss.mean);
    CHECK(rows[i].constant_loss.mean >= rows[i - 1].constant_loss.mean);
    CHECK(rows[i].schedule_seed == rows[i - 1].schedule_seed);
  }
}

TEST_CASE("sweep over M shows the decreasing MAP trend") {
  SweepSpec spec;
  spec.param = "M";
  spec.values = {4, 8, 16, 32};
  spec.fixed.t = 6;
  spec.fixed.s = 2;
  spec.fixed.n_trials = 400;
  spec.fixed.master_seed = 17;
  const auto rows = sweep(spec);
  std::vector<double> ms, losses;
  for (const auto& row : rows) {
    ms.push_back(row.value);
    losses.push_back(row.map_loss.mean);
  }
  CHECK(test_util::spearman(ms, losses) < 0.0);
}

TEST_CASE("sweep rows are deterministic and sound") {
  SweepSpec spec;
  spec.param = "sigma";
  spec.values = {0.5, 2.0};
  spec.fixed.m = 6;
  spec.fixed.t = 5;
  spec.fixed.s = 1;
  spec.fixed.n_trials = 400;
  spec.fixed.master_seed = 23;
  const auto a = sweep(spec);
  const auto b = sweep(spec);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(rows_equal_ignoring_time(a[i], b[i]));
    CHECK(a[i].mechanism == Mechanism::Kind::Gaussian);
    // every bound dominates every loss up to MC noise
    for (const LossEstimate* loss :
         {&a[i].map_loss, &a[i].prior_loss, &a[i].constant_loss}) {
      CHECK(a[i].bounds.loose_ub >= loss->mean - 3 * loss->stderr_);
      CHECK(a[i].bounds.tight_ub >= loss->mean - 3 * loss->stderr_);
    }
  }
}

TEST_CASE("bounds dominate the exact MAP loss on a small raw instance") {
  // With the raw mechanism and fixed others, observations are a function of
  // the trajectory, so the MAP loss is computable exactly by enumeration.
  Rng rng(88);
  const int m = 3, t = 4;
  const MarkovPrior prior = test_util::random_stationary_prior(rng, m);
  Scenario scen;
  scen.schedule = make_uniform_schedule(m, t, 9);
  scen.others_counts.assign(t, 0);
  scen.n = 1;
  for (int s : {0, 1}) {
    double exact_loss = 0.0;
    const long long total = 81;  // 3^4
    for (long long n = 0; n < total; ++n) {
      Trajectory traj(t);
      long long v = n;
      for (int u = 0; u < t; ++u) {
        traj[u] = static_cast<int>(v % m);
        v /= m;
      }
      double pr = prior.pi(traj[0]);
      for (int u = 1; u < t; ++u) pr *= prior.p(traj[u - 1], traj[u]);
      const Observations obs = observe(traj, scen, Mechanism::raw(), 0);
      const Estimate est = map_estimate(prior, obs, scen, Mechanism::raw());
      if (hamming_distance(traj, est.traj) <= s) exact_loss += pr;
    }
    const BoundReport rep =
        compute_bound_report(prior, scen, Mechanism::raw(), s);
    CHECK(rep.tight_ub >= exact_loss - 1e-12);
    CHECK(rep.loose_ub >= exact_loss - 1e-12);
  }
}

TEST_CASE("estimate_loss validates the success metric") {
  const MarkovPrior prior = synthetic_prior(3, 0.5);
  const Scenario scen = zero_scenario(3, 4, 1);
  CHECK_THROWS_AS(estimate_loss(prior, scen, Mechanism::raw(),
                                EstimatorKind::Prior, {4}, 10, 1),
                  ConfigError);
  CHECK_THROWS_AS(estimate_loss(prior, scen, Mechanism::raw(),
                                EstimatorKind::Prior, {-1}, 10, 1),
                  ConfigError);
  CHECK_THROWS_AS(estimate_loss(prior, scen, Mechanism::raw(),
                                EstimatorKind::Prior, {1}, 0, 1),
                  ConfigError);
}

TEST_CASE("sweep validates its grid") {
  SweepSpec spec;
  spec.param = "volume";
  spec.values = {1};
  CHECK_THROWS_AS(sweep(spec), InvalidGrid);
  spec.param = "M";
  spec.values = {};
  CHECK_THROWS_AS(sweep(spec), InvalidGrid);
  spec.values = {2.5};
  CHECK_THROWS_AS(sweep(spec), InvalidGrid);
  spec.param = "s";
  spec.values = {11};  // >= T
  CHECK_THROWS_AS(sweep(spec), InvalidGrid);
}

TEST_CASE("csv row layout is stable") {
  SweepSpec spec;
  spec.param = "s";
  spec.values = {1};
  spec.fixed.m = 4;
  spec.fixed.t = 4;
  spec.fixed.n_trials = 50;
  spec.fixed.master_seed = 3;
  const auto rows = sweep(spec);
  const std::string header = sweep_csv_header();
  const std::string line = sweep_row_csv(rows[0]);
  const auto count = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',');
  };
  CHECK(count(header) == count(line));
  CHECK(line.rfind("s,1,4,4,1,", 0) == 0);
}
