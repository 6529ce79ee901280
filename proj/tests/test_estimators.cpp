#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locpriv/errors.hpp"
#include "locpriv/estimators.hpp"
#include "locpriv/oracle.hpp"
#include "locpriv/rng.hpp"
#include "test_util.hpp"

using namespace locpriv;

namespace {

Scenario random_scenario(Rng& rng, int m, int t, long long max_others = 3) {
  Scenario scen;
  scen.n = max_others + 2;
  for (int u = 0; u < t; ++u) {
    scen.schedule.c.push_back(rng.uniform_int(m));
    scen.others_counts.push_back(rng.uniform_int(max_others + 1));
  }
  return scen;
}

}  // namespace

TEST_CASE("map_estimate degenerate cases") {
  // M = 1: only one trajectory exists
  Eigen::VectorXd one(1);
  one << 1.0;
  const MarkovPrior m1 = validate_prior(one, Eigen::MatrixXd::Ones(1, 1));
  Scenario scen1;
  scen1.schedule.c = {0, 0, 0};
  scen1.others_counts = {0, 0, 0};
  const Observations obs1 = observe({0, 0, 0}, scen1, Mechanism::raw(), 1);
  CHECK(map_estimate(m1, obs1, scen1, Mechanism::raw()).traj ==
        Trajectory{0, 0, 0});

  // degenerate prior dominates any observation
  Eigen::VectorXd e1(3);
  e1 << 0, 1, 0;
  const MarkovPrior fixed = validate_prior(e1, Eigen::MatrixXd::Identity(3, 3));
  Scenario scen2;
  scen2.schedule.c = {0, 2, 0, 2};
  scen2.others_counts = {1, 1, 1, 1};
  Observations noisy;
  noisy.y = {1.7, 0.4, 1.1, 2.3};
  const Estimate est =
      map_estimate(fixed, noisy, scen2, Mechanism::gaussian(1.0));
  CHECK(est.traj == Trajectory{1, 1, 1, 1});
}

TEST_CASE("map_estimate rejects impossible raw observations") {
  Rng rng(5);
  const MarkovPrior prior = test_util::random_prior(rng, 3);
  Scenario scen;
  scen.schedule.c = {0, 1};
  scen.others_counts = {2, 2};
  Observations obs;
  obs.y = {9, 2};  // step 0 count is reachable by no indicator value
  CHECK_THROWS_AS(map_estimate(prior, obs, scen, Mechanism::raw()),
                  InconsistentObservation);
}

TEST_CASE("map_estimate matches enumeration on random instances") {
  Rng rng(101);
  for (int rep = 0; rep < 60; ++rep) {
    const int m = 2 + rng.uniform_int(3);
    const int t = 2 + rng.uniform_int(4);
    const MarkovPrior prior =
        test_util::random_prior(rng, m, rep % 3 == 0 ? 0.2 : 0.0);
    const Scenario scen = random_scenario(rng, m, t);
    const Mechanism mech =
        rep % 2 == 0 ? Mechanism::raw() : Mechanism::gaussian(0.8);
    const Trajectory truth =
        sample_trajectory(prior, t, derive_seed(500, rep, 0));
    const Observations obs = observe(truth, scen, mech, derive_seed(500, rep, 1));

    const Estimate fast = map_estimate(prior, obs, scen, mech);
    const Estimate slow = brute_posterior_argmax(prior, obs, scen, mech);
    CHECK(fast.traj == slow.traj);
    CHECK(fast.log_score == doctest::Approx(slow.log_score).epsilon(1e-10));
    // optimality: no enumerated trajectory scores strictly higher
    CHECK(fast.log_score >= slow.log_score - 1e-12);
  }
}

TEST_CASE("map_estimate satisfies raw observation constraints") {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2 + rng.uniform_int(3);
    const int t = 2 + rng.uniform_int(5);
    const MarkovPrior prior = test_util::random_prior(rng, m);
    const Scenario scen = random_scenario(rng, m, t);
    const Trajectory truth =
        sample_trajectory(prior, t, derive_seed(501, rep, 0));
    const Observations obs =
        observe(truth, scen, Mechanism::raw(), derive_seed(501, rep, 1));
    const Estimate est = map_estimate(prior, obs, scen, Mechanism::raw());
    for (int u = 0; u < t; ++u) {
      const double indicator = obs.y[u] - scen.others_counts[u];
      CHECK((est.traj[u] == scen.schedule.c[u] ? 1.0 : 0.0) == indicator);
    }
  }
}

TEST_CASE("prior_estimate closed forms and tie-breaking") {
  Eigen::VectorXd e2(4);
  e2 << 0, 0, 1, 0;
  const MarkovPrior fixed = validate_prior(e2, Eigen::MatrixXd::Identity(4, 4));
  const Estimate est = prior_estimate(fixed, 4);
  CHECK(est.traj == Trajectory{2, 2, 2, 2});
  CHECK(est.log_score == 0.0);

  const int m = 3, t = 5;
  const MarkovPrior uniform = validate_prior(
      Eigen::VectorXd::Constant(m, 1.0 / m),
      Eigen::MatrixXd::Constant(m, m, 1.0 / m));
  const Estimate u = prior_estimate(uniform, t);
  CHECK(u.traj == Trajectory(t, 0));  // smallest-index tie-break
  CHECK(u.log_score == doctest::Approx(-t * std::log(m)).epsilon(1e-12));
}

TEST_CASE("prior_estimate matches enumeration and recomputed scores") {
  Rng rng(303);
  for (int rep = 0; rep < 40; ++rep) {
    const int m = 2 + rng.uniform_int(2);
    const int t = 2 + rng.uniform_int(4);
    const MarkovPrior prior = test_util::random_prior(rng, m);
    const Estimate fast = prior_estimate(prior, t);
    const Estimate slow = brute_prior_argmax(prior, t);
    CHECK(fast.traj == slow.traj);
    CHECK(fast.log_score == doctest::Approx(slow.log_score).epsilon(1e-12));

    // score equals the trajectory's joint probability recomputed directly
    double lp = std::log(prior.pi(fast.traj[0]));
    for (int u = 1; u < t; ++u)
      lp += std::log(prior.p(fast.traj[u - 1], fast.traj[u]));
    CHECK(fast.log_score == doctest::Approx(lp).epsilon(1e-12));
  }
}

TEST_CASE("constant_estimate ignores everything") {
  CHECK(constant_estimate(0, 3).traj == Trajectory{0, 0, 0});
  CHECK(constant_estimate(6, 1).traj == Trajectory{6});
  CHECK(constant_estimate(2, 4).log_score == 0.0);
}

TEST_CASE("constant_success_exact degenerate and enumerated cases") {
  Eigen::VectorXd e0(3);
  e0 << 1, 0, 0;
  const MarkovPrior det = validate_prior(e0, Eigen::MatrixXd::Identity(3, 3));
  for (int s = 0; s < 4; ++s)
    CHECK(constant_success_exact(det, 0, 4, s) == doctest::Approx(1.0));

  Rng rng(404);
  for (int rep = 0; rep < 25; ++rep) {
    const int m = 2 + rng.uniform_int(2);
    const int t = 2 + rng.uniform_int(4);
    const int s = rng.uniform_int(t);
    const int l = rng.uniform_int(m);
    const MarkovPrior prior = test_util::random_prior(rng, m);
    CHECK(constant_success_exact(prior, l, t, s) ==
          doctest::Approx(brute_constant_success(prior, l, t, s))
              .epsilon(1e-12));
    // complement structure at s = t-1
    const double all_wrong =
        1.0 - brute_constant_success(prior, l, t, t - 1);
    CHECK(constant_success_exact(prior, l, t, t - 1) ==
          doctest::Approx(1.0 - all_wrong).epsilon(1e-12));
  }
}

TEST_CASE("constant_success_exact is monotone in s") {
  Rng rng(505);
  for (int rep = 0; rep < 10; ++rep) {
    const int m = 2 + rng.uniform_int(4);
    const int t = 3 + rng.uniform_int(5);
    const int l = rng.uniform_int(m);
    const MarkovPrior prior = test_util::random_prior(rng, m);
    double prev = 0.0;
    for (int s = 0; s < t; ++s) {
      const double cur = constant_success_exact(prior, l, t, s);
      CHECK(cur >= prev - 1e-15);
      prev = cur;
    }
  }
}

TEST_CASE("hamming_distance") {
  CHECK(hamming_distance({0, 1, 2}, {0, 1, 2}) == 0);
  CHECK(hamming_distance({0, 1, 2}, {1, 1, 0}) == 2);
  CHECK_THROWS_AS(hamming_distance({0}, {0, 1}), DimensionMismatch);
}
