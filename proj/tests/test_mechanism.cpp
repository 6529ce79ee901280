#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locpriv/errors.hpp"
#include "locpriv/mechanism.hpp"
#include "locpriv/numeric.hpp"
#include "locpriv/rng.hpp"
#include "test_util.hpp"

using namespace locpriv;

namespace {

Scenario make_scenario(std::vector<LocationId> c, std::vector<long long> others,
                       long long n = 10) {
  Scenario s;
  s.schedule.c = std::move(c);
  s.others_counts = std::move(others);
  s.n = n;
  return s;
}

}  // namespace

TEST_CASE("raw observations are counts") {
  const Scenario scen = make_scenario({0, 1, 2}, {3, 0, 7});
  // trajectory never at the sensor
  const Observations away =
      observe({2, 0, 1}, scen, Mechanism::raw(), 1);
  CHECK(away.y == std::vector<double>{3, 0, 7});
  // trajectory always at the sensor
  const Observations at = observe({0, 1, 2}, scen, Mechanism::raw(), 1);
  CHECK(at.y == std::vector<double>{4, 1, 8});
}

TEST_CASE("gaussian noise has the right first two moments") {
  const int n = 100000;
  const Scenario scen = make_scenario(std::vector<LocationId>(n, 0),
                                      std::vector<long long>(n, 2));
  const Trajectory traj(n, 1);  // never at the sensor -> mean 2
  const Observations obs = observe(traj, scen, Mechanism::gaussian(1.0), 77);
  double sum = 0, sum2 = 0;
  for (double y : obs.y) {
    sum += y - 2.0;
    sum2 += (y - 2.0) * (y - 2.0);
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) <= 3.0 / std::sqrt(n));
  CHECK(std::abs(var - 1.0) <= 3.0 * std::sqrt(2.0 / n));
}

TEST_CASE("observations are reproducible and seed-sensitive") {
  const Scenario scen = make_scenario({0, 0, 0, 0}, {1, 1, 1, 1});
  const Trajectory traj{0, 1, 0, 1};
  const Mechanism mech = Mechanism::gaussian(2.0);
  CHECK(observe(traj, scen, mech, 5).y == observe(traj, scen, mech, 5).y);
  CHECK(observe(traj, scen, mech, 5).y != observe(traj, scen, mech, 6).y);
}

TEST_CASE("emission log-probabilities") {
  const Mechanism raw = Mechanism::raw();
  CHECK(emission_logprob(raw, 4.0, 2, 2, 3) == 0.0);   // consistent
  CHECK(emission_logprob(raw, 4.0, 1, 2, 3) == kNegInf);  // inconsistent
  CHECK(emission_logprob(raw, 3.0, 1, 2, 3) == 0.0);
  CHECK(emission_logprob(raw, 3.0, 2, 2, 3) == kNegInf);

  const Mechanism g = Mechanism::gaussian(1.0);
  CHECK(emission_logprob(g, 4.0, 2, 2, 3) ==
        doctest::Approx(-0.9189385332046727).epsilon(1e-12));
}

TEST_CASE("raw observation and emission are consistent on generated data") {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const int m = 2 + rng.uniform_int(4);
    const int t = 1 + rng.uniform_int(6);
    const MarkovPrior prior = test_util::random_prior(rng, m);
    Scenario scen;
    scen.n = 5;
    for (int u = 0; u < t; ++u) {
      scen.schedule.c.push_back(rng.uniform_int(m));
      scen.others_counts.push_back(rng.uniform_int(4));
    }
    const Trajectory traj = sample_trajectory(prior, t, derive_seed(9, rep, 0));
    const Observations obs =
        observe(traj, scen, Mechanism::raw(), derive_seed(9, rep, 1));
    for (int u = 0; u < t; ++u)
      CHECK(emission_logprob(Mechanism::raw(), obs.y[u], traj[u],
                             scen.schedule.c[u], scen.others_counts[u]) == 0.0);
  }
}

TEST_CASE("gaussian emission densities integrate to one") {
  const Mechanism g = Mechanism::gaussian(0.7);
  const long long others = 4;
  // Simpson's rule over +-10 sigma around both branch means.
  const auto integrate = [&](bool at_sensor) {
    const double mean = others + (at_sensor ? 1.0 : 0.0);
    const double a = mean - 10 * g.sigma, b = mean + 10 * g.sigma;
    const int n = 20000;
    const double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double y = a + i * h;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += w * std::exp(emission_logprob_ind(g, y, at_sensor, others));
    }
    return sum * h / 3.0;
  };
  CHECK(integrate(true) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integrate(false) == doctest::Approx(1.0).epsilon(1e-6));

  // Equal-weight two-point mixture over both branches is also a density.
  const double a = others - 10 * g.sigma, b = others + 1 + 10 * g.sigma;
  const int n = 40000;
  const double h = (b - a) / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double y = a + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * 0.5 *
           (std::exp(emission_logprob_ind(g, y, true, others)) +
            std::exp(emission_logprob_ind(g, y, false, others)));
  }
  CHECK(sum * h / 3.0 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("dp_epsilon formula and monotonicity") {
  const double delta = 1e-5;
  const int t = 10;
  const double sigma1 = std::sqrt(2.0 * std::log(1.25 / delta) * t);
  CHECK(dp_epsilon(sigma1, delta, t) == doctest::Approx(1.0).epsilon(1e-12));
  // sqrt(T) scaling: T x4 doubles epsilon
  CHECK(dp_epsilon(2.0, delta, 4 * t) ==
        doctest::Approx(2.0 * dp_epsilon(2.0, delta, t)).epsilon(1e-12));
  CHECK(dp_epsilon(1.0, 1e-5, 10) ==
        doctest::Approx(15.320619449803221).epsilon(1e-9));

  CHECK(dp_epsilon(2.0, delta, t) < dp_epsilon(1.0, delta, t));
  CHECK(dp_epsilon(1.0, 1e-3, t) < dp_epsilon(1.0, 1e-5, t));
  CHECK(dp_epsilon(1.0, delta, 20) > dp_epsilon(1.0, delta, 10));
}

TEST_CASE("degenerate mechanism parameters are rejected") {
  CHECK_THROWS_AS(Mechanism::gaussian(0.0), ConfigError);
  CHECK_THROWS_AS(dp_epsilon(-1.0, 0.5, 3), ConfigError);
  CHECK_THROWS_AS(dp_epsilon(1.0, 0.0, 3), ConfigError);
}
