#pragma once

#include <cstdint>
#include <string>

#include "locpriv/mechanism.hpp"
#include "locpriv/serialize.hpp"

namespace locpriv {

// Shared configuration for the attack / bound commands. Serializes
// losslessly; flags override file values field by field.
struct RunConfig {
  int m = 100;
  int t = 10;
  int s = 5;
  double tau = 0.1;
  double sigma = 1.0;
  std::string mechanism = "raw";  // raw | gaussian
  long n_trials = 1000;
  std::uint64_t seed = 1;
  std::string schedule = "uniform";  // uniform | fixed:<idx> | fixed:top
  std::string bundle;                // non-empty: run on fitted priors
  double dp_delta = 1e-5;

  Mechanism make_mechanism() const;
  void validate() const;  // throws ConfigError
};

Json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const Json& j);

struct FitConfig {
  std::string input;
  std::string format = "tsv";  // tsv | csv
  long long window_seconds = 1728000;  // 20 days
  int top_k = 100;
  int eval_t = 5;
  double alpha = 0.1;
  int min_active = 10;
  double max_malformed = 0.01;

  void validate() const;
};

Json fit_config_to_json(const FitConfig& cfg);
FitConfig fit_config_from_json(const Json& j);

struct SimulateConfig {
  int users = 20;
  int venues = 8;
  int windows = 30;
  long long window_seconds = 1728000;
  double tau = 0.2;
  double skip_prob = 0.2;
  std::uint64_t seed = 1;

  void validate() const;
};

Json simulate_config_to_json(const SimulateConfig& cfg);
SimulateConfig simulate_config_from_json(const Json& j);

// Parses "uniform", "fixed:top" or "fixed:<index>"; returns the fixed index,
// -1 for uniform, -2 for fixed:top.
int parse_schedule_mode(const std::string& mode);

}  // namespace locpriv
