#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "locpriv/bounds.hpp"
#include "locpriv/estimators.hpp"
#include "locpriv/markov.hpp"
#include "locpriv/mechanism.hpp"

namespace locpriv {

enum class EstimatorKind { Map, Prior, Constant, ConstantMax };

std::string estimator_kind_name(EstimatorKind kind);

// Monte Carlo estimate of Pr[d(X, X_hat) <= s] for one estimator.
struct LossEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;  // sqrt(mean (1-mean) / n)
  long n_trials = 0;
  EstimatorKind kind = EstimatorKind::Map;
  LocationId constant_loc = -1;  // Constant: the guess; ConstantMax: argmax
};

// One trial draws the trajectory from derive_seed(master, i, kStreamTrajectory)
// and the noise from derive_seed(master, i, kStreamNoise), so all estimators
// see identical data per trial (paired design).
LossEstimate estimate_loss(const MarkovPrior& prior, const Scenario& scen,
                           const Mechanism& mech, EstimatorKind kind,
                           SuccessMetric metric, long n_trials,
                           std::uint64_t master_seed, int threads = 0,
                           LocationId constant_loc = 0);

// Per-location constant losses on the shared trial set; returns the maximum
// (smallest index on ties). `exclude` drops one candidate location, e.g. the
// "somewhere else" bucket of ingested data.
LossEstimate estimate_loss_constant_max(const MarkovPrior& prior,
                                        const Scenario& scen, int t,
                                        SuccessMetric metric, long n_trials,
                                        std::uint64_t master_seed,
                                        std::optional<LocationId> exclude = {},
                                        int threads = 0);

// Fixed (non-swept) configuration of a sweep; defaults mirror the synthetic
// baseline (M=100, T=10, tau=0.1, s=5, sigma=1, 1000 trials).
struct SweepDefaults {
  int m = 100;
  int t = 10;
  int s = 5;
  double tau = 0.1;
  double sigma = 1.0;
  Mechanism::Kind mechanism = Mechanism::Kind::Raw;
  long n_trials = 1000;
  std::uint64_t master_seed = 0;
};

struct SweepSpec {
  std::string param;  // one of: M, s, T, sigma, tau
  std::vector<double> values;
  SweepDefaults fixed;
};

struct SweepRow {
  std::string param;
  double value = 0.0;
  int m = 0, t = 0, s = 0;
  double tau = 0.0, sigma = 0.0;
  Mechanism::Kind mechanism = Mechanism::Kind::Raw;
  long n_trials = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t schedule_seed = 0;
  LossEstimate map_loss, prior_loss, constant_loss;
  BoundReport bounds;
  double wall_ms = 0.0;  // informational; excluded from determinism checks
};

// One row per grid point: rebuild the synthetic prior, draw one schedule,
// run all three estimators and the bound report. Trial seeds do not involve
// the grid index, so sweeps over s share trajectories exactly.
std::vector<SweepRow> sweep(const SweepSpec& spec, int threads = 0);

std::string sweep_csv_header();
std::string sweep_row_csv(const SweepRow& row);

}  // namespace locpriv
