#pragma once

#include <cstdint>
#include <vector>

#include "locpriv/markov.hpp"

namespace locpriv {

// Which single location's occupancy count is released at each step.
struct SensorSchedule {
  std::vector<LocationId> c;
  int t() const { return static_cast<int>(c.size()); }
};

// A release setting: the schedule plus, per step, the number of non-target
// individuals standing at the sensor location (known to the adversary).
struct Scenario {
  SensorSchedule schedule;
  std::vector<long long> others_counts;
  long long n = 1;  // population size, informational
  int t() const { return schedule.t(); }
};

struct Mechanism {
  enum class Kind { Raw, Gaussian };
  Kind kind = Kind::Raw;
  double sigma = 0.0;

  static Mechanism raw() { return {Kind::Raw, 0.0}; }
  static Mechanism gaussian(double sigma);
};

// Released counts y_1..y_T; integers for Raw, reals for Gaussian.
struct Observations {
  std::vector<double> y;
};

// Uniform-random sensor schedule over [0, m) (or [0, limit) when the last
// indices must be excluded, e.g. a "somewhere else" bucket).
SensorSchedule make_uniform_schedule(int m, int t, std::uint64_t seed,
                                     int limit = -1);

// y_t = others_t + 1[x_t = c_t] (+ N(0, sigma^2) for Gaussian).
Observations observe(const Trajectory& traj, const Scenario& scen,
                     const Mechanism& mech, std::uint64_t seed);

// Log Pr[Y_t = y_t | X_t = x_t]; -inf is a value, not an error.
double emission_logprob(const Mechanism& mech, double y_t, LocationId x_t,
                        LocationId c_t, long long others_t);

// Same, keyed on the indicator 1[x_t = c_t] directly.
double emission_logprob_ind(const Mechanism& mech, double y_t, bool at_sensor,
                            long long others_t);

// Gaussian-mechanism accounting for a T-step release, for comparison only:
// eps = sqrt(2 ln(1.25/delta) T) / sigma.
double dp_epsilon(double sigma, double delta, int t);

}  // namespace locpriv
