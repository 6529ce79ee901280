#include "locpriv/runconfig.hpp"

#include <charconv>

#include "locpriv/errors.hpp"

namespace locpriv {

Mechanism RunConfig::make_mechanism() const {
  if (mechanism == "raw") return Mechanism::raw();
  if (mechanism == "gaussian") return Mechanism::gaussian(sigma);
  throw ConfigError("mechanism must be raw or gaussian, got '" + mechanism +
                    "'");
}

void RunConfig::validate() const {
  if (m < 1) throw ConfigError("m must be >= 1");
  if (t < 1) throw ConfigError("t must be >= 1");
  if (s < 0 || (bundle.empty() && s >= t))
    throw ConfigError("requires 0 <= s < t");
  if (tau <= 0) throw ConfigError("tau must be positive");
  if (mechanism == "gaussian" && sigma <= 0)
    throw ConfigError("sigma must be positive");
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  if (dp_delta <= 0 || dp_delta >= 1) throw ConfigError("dp_delta in (0,1)");
  make_mechanism();
  parse_schedule_mode(schedule);
}

Json run_config_to_json(const RunConfig& cfg) {
  Json j;
  j["format_version"] = 1;
  j["m"] = cfg.m;
  j["t"] = cfg.t;
  j["s"] = cfg.s;
  j["tau"] = cfg.tau;
  j["sigma"] = cfg.sigma;
  j["mechanism"] = cfg.mechanism;
  j["n_trials"] = cfg.n_trials;
  j["seed"] = cfg.seed;
  j["schedule"] = cfg.schedule;
  j["bundle"] = cfg.bundle;
  j["dp_delta"] = cfg.dp_delta;
  return j;
}

RunConfig run_config_from_json(const Json& j) {
  RunConfig cfg;
  if (j.contains("m")) cfg.m = j.at("m").get<int>();
  if (j.contains("t")) cfg.t = j.at("t").get<int>();
  if (j.contains("s")) cfg.s = j.at("s").get<int>();
  if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
  if (j.contains("sigma")) cfg.sigma = j.at("sigma").get<double>();
  if (j.contains("mechanism")) cfg.mechanism = j.at("mechanism").get<std::string>();
  if (j.contains("n_trials")) cfg.n_trials = j.at("n_trials").get<long>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("schedule")) cfg.schedule = j.at("schedule").get<std::string>();
  if (j.contains("bundle")) cfg.bundle = j.at("bundle").get<std::string>();
  if (j.contains("dp_delta")) cfg.dp_delta = j.at("dp_delta").get<double>();
  return cfg;
}

void FitConfig::validate() const {
  if (input.empty()) throw ConfigError("input path required");
  if (format != "tsv" && format != "csv")
    throw ConfigError("format must be tsv or csv");
  if (window_seconds <= 0) throw ConfigError("window must be positive");
  if (top_k < 1) throw ConfigError("top_k must be >= 1");
  if (eval_t < 1) throw ConfigError("eval_t must be >= 1");
  if (alpha < 0) throw ConfigError("alpha must be >= 0");
  if (min_active < 1) throw ConfigError("min_active must be >= 1");
  if (max_malformed < 0 || max_malformed > 1)
    throw ConfigError("max_malformed in [0,1]");
}

Json fit_config_to_json(const FitConfig& cfg) {
  Json j;
  j["format_version"] = 1;
  j["input"] = cfg.input;
  j["format"] = cfg.format;
  j["window_seconds"] = cfg.window_seconds;
  j["top_k"] = cfg.top_k;
  j["eval_t"] = cfg.eval_t;
  j["alpha"] = cfg.alpha;
  j["min_active"] = cfg.min_active;
  j["max_malformed"] = cfg.max_malformed;
  return j;
}

FitConfig fit_config_from_json(const Json& j) {
  FitConfig cfg;
  if (j.contains("input")) cfg.input = j.at("input").get<std::string>();
  if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  if (j.contains("window_seconds"))
    cfg.window_seconds = j.at("window_seconds").get<long long>();
  if (j.contains("top_k")) cfg.top_k = j.at("top_k").get<int>();
  if (j.contains("eval_t")) cfg.eval_t = j.at("eval_t").get<int>();
  if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
  if (j.contains("min_active")) cfg.min_active = j.at("min_active").get<int>();
  if (j.contains("max_malformed"))
    cfg.max_malformed = j.at("max_malformed").get<double>();
  return cfg;
}

void SimulateConfig::validate() const {
  if (users < 1 || venues < 1 || windows < 1)
    throw ConfigError("users, venues, windows must be >= 1");
  if (window_seconds <= 0) throw ConfigError("window must be positive");
  if (tau <= 0) throw ConfigError("tau must be positive");
  if (skip_prob < 0 || skip_prob >= 1)
    throw ConfigError("skip_prob in [0,1)");
}

Json simulate_config_to_json(const SimulateConfig& cfg) {
  Json j;
  j["format_version"] = 1;
  j["users"] = cfg.users;
  j["venues"] = cfg.venues;
  j["windows"] = cfg.windows;
  j["window_seconds"] = cfg.window_seconds;
  j["tau"] = cfg.tau;
  j["skip_prob"] = cfg.skip_prob;
  j["seed"] = cfg.seed;
  return j;
}

SimulateConfig simulate_config_from_json(const Json& j) {
  SimulateConfig cfg;
  if (j.contains("users")) cfg.users = j.at("users").get<int>();
  if (j.contains("venues")) cfg.venues = j.at("venues").get<int>();
  if (j.contains("windows")) cfg.windows = j.at("windows").get<int>();
  if (j.contains("window_seconds"))
    cfg.window_seconds = j.at("window_seconds").get<long long>();
  if (j.contains("tau")) cfg.tau = j.at("tau").get<double>();
  if (j.contains("skip_prob")) cfg.skip_prob = j.at("skip_prob").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

int parse_schedule_mode(const std::string& mode) {
  if (mode == "uniform") return -1;
  if (mode == "fixed:top") return -2;
  const std::string prefix = "fixed:";
  if (mode.rfind(prefix, 0) == 0) {
    const std::string num = mode.substr(prefix.size());
    int idx = -1;
    const auto res = std::from_chars(num.data(), num.data() + num.size(), idx);
    if (res.ec == std::errc() && res.ptr == num.data() + num.size() && idx >= 0)
      return idx;
  }
  throw ConfigError("schedule must be uniform, fixed:top or fixed:<index>");
}

}  // namespace locpriv
