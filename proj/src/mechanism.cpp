#include "locpriv/mechanism.hpp"

#include <cmath>
#include <string>

#include "locpriv/errors.hpp"
#include "locpriv/numeric.hpp"
#include "locpriv/rng.hpp"

namespace locpriv {

Mechanism Mechanism::gaussian(double sigma) {
  if (sigma <= 0) throw ConfigError("gaussian mechanism requires sigma > 0");
  return {Kind::Gaussian, sigma};
}

SensorSchedule make_uniform_schedule(int m, int t, std::uint64_t seed,
                                     int limit) {
  if (m < 1 || t < 1) throw ConfigError("schedule requires m >= 1, t >= 1");
  if (limit <= 0 || limit > m) limit = m;
  Rng rng(seed);
  SensorSchedule sched;
  sched.c.resize(t);
  for (int u = 0; u < t; ++u) sched.c[u] = rng.uniform_int(limit);
  return sched;
}

Observations observe(const Trajectory& traj, const Scenario& scen,
                     const Mechanism& mech, std::uint64_t seed) {
  const int t = scen.t();
  if (static_cast<int>(traj.size()) != t)
    throw DimensionMismatch("trajectory length " + std::to_string(traj.size()) +
                            " vs scenario T=" + std::to_string(t));
  if (static_cast<int>(scen.others_counts.size()) != t)
    throw DimensionMismatch("others_counts length mismatch");

  Rng rng(seed);
  Observations obs;
  obs.y.resize(t);
  for (int u = 0; u < t; ++u) {
    double y = static_cast<double>(scen.others_counts[u]) +
               (traj[u] == scen.schedule.c[u] ? 1.0 : 0.0);
    if (mech.kind == Mechanism::Kind::Gaussian) y += mech.sigma * rng.normal();
    obs.y[u] = y;
  }
  return obs;
}

double emission_logprob_ind(const Mechanism& mech, double y_t, bool at_sensor,
                            long long others_t) {
  const double mean = static_cast<double>(others_t) + (at_sensor ? 1.0 : 0.0);
  if (mech.kind == Mechanism::Kind::Raw)
    return y_t == mean ? 0.0 : kNegInf;
  const double z = (y_t - mean) / mech.sigma;
  return -0.5 * std::log(2.0 * M_PI) - std::log(mech.sigma) - 0.5 * z * z;
}

double emission_logprob(const Mechanism& mech, double y_t, LocationId x_t,
                        LocationId c_t, long long others_t) {
  return emission_logprob_ind(mech, y_t, x_t == c_t, others_t);
}

double dp_epsilon(double sigma, double delta, int t) {
  if (sigma <= 0) throw ConfigError("sigma must be positive");
  if (delta <= 0 || delta >= 1) throw ConfigError("delta must be in (0,1)");
  if (t < 1) throw ConfigError("t must be >= 1");
  return std::sqrt(2.0 * std::log(1.25 / delta) * t) / sigma;
}

}  // namespace locpriv
