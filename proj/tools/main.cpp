// locpriv command-line front end: simulate check-in data, fit per-user
// priors, run reconstruction attacks, and compute privacy-loss bounds.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "locpriv/bounds.hpp"
#include "locpriv/errors.hpp"
#include "locpriv/ingest.hpp"
#include "locpriv/montecarlo.hpp"
#include "locpriv/oracle.hpp"
#include "locpriv/parallel.hpp"
#include "locpriv/rng.hpp"
#include "locpriv/runconfig.hpp"
#include "locpriv/serialize.hpp"

namespace {

using namespace locpriv;

Json load_config_file(const std::string& path) {
  if (path.empty()) return Json::object();
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
}

// Flags given on the command line win over config-file values.
template <class T>
void overlay(const CLI::Option* opt, const Json& cfg, const char* key,
             T& field) {
  if (opt->count() == 0 && cfg.contains(key)) {
    try {
      field = cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
  }
}

std::string zero_pad(long v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

// ---------------------------------------------------------------------------
// simulate: synthetic check-in TSV that the fit command can ingest.

int cmd_simulate(const SimulateConfig& cfg, const std::string& out_path) {
  cfg.validate();
  const MarkovPrior prior = synthetic_prior(cfg.venues, cfg.tau);
  const long long t0 = 1300000000;  // fixed epoch so output is reproducible
  std::ostringstream out;
  for (int u = 0; u < cfg.users; ++u) {
    const Trajectory traj = sample_trajectory(
        prior, cfg.windows, derive_seed(cfg.seed, u, kStreamTrajectory));
    Rng skip_rng(derive_seed(cfg.seed, u, kStreamSimulate));
    for (int w = 0; w < cfg.windows; ++w) {
      const bool skip = skip_rng.uniform() < cfg.skip_prob;
      if (skip) continue;
      const long long ts =
          t0 + static_cast<long long>(w) * cfg.window_seconds +
          cfg.window_seconds / 2;
      out << 'u' << zero_pad(u, 4) << '\t' << 'v' << zero_pad(traj[w], 3)
          << '\t' << ts << '\n';
    }
  }
  write_text_file(out_path, out.str());
  std::cerr << "wrote " << out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// fit: check-ins -> per-user prior bundle.

int cmd_fit(const FitConfig& cfg, const std::string& out_path, int threads) {
  cfg.validate();
  std::istringstream in(read_text_file(cfg.input));
  const CheckinFormat fmt =
      cfg.format == "csv" ? CheckinFormat::Csv : CheckinFormat::Tsv;
  const ParseResult parsed =
      parse_checkins(in, fmt, ColumnSpec{}, cfg.max_malformed);
  if (parsed.malformed > 0)
    std::cerr << "note: " << parsed.malformed << " malformed line(s) of "
              << parsed.total_lines << " skipped\n";

  DiscretizeResult disc =
      discretize(parsed.records, cfg.window_seconds, cfg.top_k, cfg.min_active);
  if (disc.t_windows <= cfg.eval_t)
    throw TooShort("data spans " + std::to_string(disc.t_windows) +
                   " windows, need more than eval_t=" +
                   std::to_string(cfg.eval_t));

  // Per-user fitting is independent; outputs land in order-preserving slots.
  const long n_users = static_cast<long>(disc.users.size());
  std::vector<MarkovPrior> priors(n_users);
  std::vector<std::vector<LocationId>> trains(n_users);
  std::vector<Trajectory> evals(n_users);
  parallel_chunks(n_users, threads, [&](long b, long e, int) {
    for (long i = b; i < e; ++i) {
      disc.users[i].eval_suffix_len = cfg.eval_t;
      auto [train, eval] = split_train_eval(disc.users[i], cfg.eval_t);
      priors[i] = fit_transition(train, disc.m, cfg.alpha);
      trains[i] = std::move(train);
      evals[i] = std::move(eval);
    }
  });

  Json users = Json::array();
  int non_stationary = 0;
  for (long i = 0; i < n_users; ++i) {
    const auto& user = disc.users[i];
    if (!priors[i].stationary) ++non_stationary;
    Json ju;
    ju["user_id"] = user.user_id;
    ju["train_len"] = static_cast<int>(trains[i].size());
    ju["eval"] = evals[i];
    std::vector<int> eval_fill(user.fill_mask.end() - cfg.eval_t,
                               user.fill_mask.end());
    ju["eval_fill"] = eval_fill;
    ju["prior"] = prior_to_json(priors[i]);
    users.push_back(std::move(ju));
  }
  if (non_stationary > 0)
    std::cerr << "warning: " << non_stationary
              << " user prior(s) not stationary (power iteration fallback)\n";

  Json bundle;
  bundle["format_version"] = 1;
  bundle["kind"] = "prior_bundle";
  Json manifest;
  manifest["m"] = disc.m;
  manifest["k"] = disc.m - 1;
  manifest["somewhere_else"] = disc.somewhere_else;
  manifest["top_k"] = cfg.top_k;
  manifest["window_seconds"] = disc.window_seconds;
  manifest["t0"] = disc.t0;
  manifest["t_windows"] = disc.t_windows;
  manifest["eval_t"] = cfg.eval_t;
  manifest["alpha"] = cfg.alpha;
  manifest["min_active"] = cfg.min_active;
  manifest["user_count"] = static_cast<int>(disc.users.size());
  manifest["window_alignment"] = "dataset_start";
  manifest["modal_tie_rule"] = "global_popularity_then_lex";
  manifest["most_visited_index"] = 0;
  bundle["manifest"] = std::move(manifest);
  Json lmap = Json::object();
  for (const auto& venue : disc.venue_of_index)
    lmap[venue] = disc.location_map.at(venue);
  bundle["location_map"] = std::move(lmap);
  bundle["config"] = fit_config_to_json(cfg);
  bundle["users"] = std::move(users);

  write_text_file(out_path, bundle.dump(2) + "\n");
  std::cerr << "wrote " << out_path << " (" << disc.users.size()
            << " users, M=" << disc.m << ", T=" << disc.t_windows << ")\n";
  return 0;
}

// ---------------------------------------------------------------------------
// Shared bundle loading for attack/bound on fitted priors.

struct LoadedBundle {
  int m = 0;
  int somewhere_else = 0;
  int eval_t = 0;
  std::vector<std::string> user_ids;
  std::vector<MarkovPrior> priors;
  std::vector<Trajectory> evals;
};

LoadedBundle load_bundle(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bundle " + path + ": " + e.what());
  }
  if (!j.contains("kind") || j.at("kind") != "prior_bundle")
    throw ConfigError("not a prior bundle: " + path);
  LoadedBundle b;
  b.m = j.at("manifest").at("m").get<int>();
  b.somewhere_else = j.at("manifest").at("somewhere_else").get<int>();
  b.eval_t = j.at("manifest").at("eval_t").get<int>();
  for (const auto& ju : j.at("users")) {
    b.user_ids.push_back(ju.at("user_id").get<std::string>());
    b.priors.push_back(prior_from_json(ju.at("prior")));
    b.evals.push_back(ju.at("eval").get<Trajectory>());
  }
  if (b.priors.empty()) throw NoRecords("bundle has no users");
  return b;
}

SensorSchedule schedule_for(const RunConfig& cfg, int m, int t, int limit,
                            int top_index) {
  const int mode = parse_schedule_mode(cfg.schedule);
  SensorSchedule sched;
  if (mode == -1) {
    sched = make_uniform_schedule(
        m, t, derive_seed(cfg.seed, kGlobalTrial, kStreamSchedule), limit);
  } else {
    const int loc = mode == -2 ? top_index : mode;
    const int cap = limit > 0 ? limit : m;
    if (loc >= cap) throw ConfigError("fixed sensor location out of range");
    sched.c.assign(t, loc);
  }
  return sched;
}

// ---------------------------------------------------------------------------
// attack

int cmd_attack_synthetic(const RunConfig& cfg, const std::string& out_path,
                         bool oracle, int threads) {
  const MarkovPrior prior = synthetic_prior(cfg.m, cfg.tau);
  int top_index = 0;
  prior.pi.maxCoeff(&top_index);  // most probable stationary location
  Scenario scen;
  scen.schedule = schedule_for(cfg, cfg.m, cfg.t, -1, top_index);
  scen.others_counts.assign(cfg.t, 0);
  scen.n = 1;
  const Mechanism mech = cfg.make_mechanism();

  const LossEstimate map_loss =
      estimate_loss(prior, scen, mech, EstimatorKind::Map, {cfg.s},
                    cfg.n_trials, cfg.seed, threads);
  const LossEstimate prior_loss =
      estimate_loss(prior, scen, mech, EstimatorKind::Prior, {cfg.s},
                    cfg.n_trials, cfg.seed, threads);
  const LossEstimate const_loss = estimate_loss_constant_max(
      prior, scen, cfg.t, {cfg.s}, cfg.n_trials, cfg.seed, {}, threads);

  long oracle_checked = 0;
  if (oracle) {
    double space = 1.0;
    for (int i = 0; i < cfg.t; ++i) space *= cfg.m;
    if (space <= 1e6) {
      const long n_check = std::min<long>(cfg.n_trials, 50);
      for (long i = 0; i < n_check; ++i) {
        const Trajectory traj = sample_trajectory(
            prior, cfg.t, derive_seed(cfg.seed, i, kStreamTrajectory));
        const Observations obs =
            observe(traj, scen, mech, derive_seed(cfg.seed, i, kStreamNoise));
        const Estimate fast = map_estimate(prior, obs, scen, mech);
        const Estimate slow = brute_posterior_argmax(prior, obs, scen, mech);
        if (fast.traj != slow.traj ||
            std::abs(fast.log_score - slow.log_score) > 1e-10)
          throw Error(ErrorCategory::Numeric,
                      "oracle mismatch: map_estimate disagrees with "
                      "enumeration on trial " + std::to_string(i));
      }
      const Estimate fast_prior = prior_estimate(prior, cfg.t);
      const Estimate slow_prior = brute_prior_argmax(prior, cfg.t);
      if (fast_prior.traj != slow_prior.traj)
        throw Error(ErrorCategory::Numeric,
                    "oracle mismatch: prior_estimate disagrees");
      oracle_checked = n_check;
    } else {
      std::cerr << "note: --oracle skipped (M^T too large)\n";
    }
  }

  Json out;
  out["format_version"] = 1;
  out["command"] = "attack";
  out["mode"] = "synthetic";
  out["config"] = run_config_to_json(cfg);
  out["rng"] = rng_metadata();
  out["schedule"] = scen.schedule.c;
  Json losses;
  losses["map"] = loss_to_json(map_loss);
  losses["prior"] = loss_to_json(prior_loss);
  losses["constant_max"] = loss_to_json(const_loss);
  out["losses"] = std::move(losses);
  if (oracle) out["oracle_checked"] = oracle_checked;

  write_text_file(out_path, out.dump(2) + "\n");
  std::cerr << "map=" << map_loss.mean << " prior=" << prior_loss.mean
            << " constant_max=" << const_loss.mean << " -> " << out_path
            << "\n";
  return 0;
}

int cmd_attack_bundle(const RunConfig& cfg, const std::string& out_path,
                      int threads) {
  const LoadedBundle bundle = load_bundle(cfg.bundle);
  const int t = bundle.eval_t;
  const int k = bundle.somewhere_else;  // real venues are [0, k)
  if (cfg.s < 0 || cfg.s >= t)
    throw ConfigError("requires 0 <= s < eval_t=" + std::to_string(t));
  const Mechanism mech = cfg.make_mechanism();
  const int n_users = static_cast<int>(bundle.priors.size());

  // Sensors sit at real venues only; index 0 is the most visited venue.
  SensorSchedule sched = schedule_for(cfg, bundle.m, t, k, 0);

  // One global count release per step, decomposed per target afterwards.
  std::vector<long long> counts(t, 0);
  for (const auto& eval : bundle.evals)
    for (int u = 0; u < t; ++u) counts[u] += eval[u] == sched.c[u];
  std::vector<double> released(t);
  Rng noise_rng(derive_seed(cfg.seed, kGlobalTrial, kStreamNoise));
  for (int u = 0; u < t; ++u) {
    released[u] = static_cast<double>(counts[u]);
    if (mech.kind == Mechanism::Kind::Gaussian)
      released[u] += mech.sigma * noise_rng.normal();
  }

  std::vector<int> map_hits(n_users, 0), prior_hits(n_users, 0);
  parallel_chunks(n_users, threads, [&](long b, long e, int) {
    for (long i = b; i < e; ++i) {
      Scenario scen;
      scen.schedule = sched;
      scen.n = n_users;
      scen.others_counts.resize(t);
      Observations obs;
      obs.y.resize(t);
      for (int u = 0; u < t; ++u) {
        scen.others_counts[u] = counts[u] - (bundle.evals[i][u] == sched.c[u]);
        obs.y[u] = released[u];
      }
      const Estimate map_est = map_estimate(bundle.priors[i], obs, scen, mech);
      const Estimate pri_est = prior_estimate(bundle.priors[i], t);
      map_hits[i] = hamming_distance(bundle.evals[i], map_est.traj) <= cfg.s;
      prior_hits[i] = hamming_distance(bundle.evals[i], pri_est.traj) <= cfg.s;
    }
  });

  // Lucky constant over real venues (somewhere-else excluded).
  long best_hits = -1;
  int best_loc = -1;
  for (int l = 0; l < k; ++l) {
    long hits = 0;
    for (const auto& eval : bundle.evals) {
      int errors = 0;
      for (int u = 0; u < t; ++u) errors += eval[u] != l;
      hits += errors <= cfg.s;
    }
    if (hits > best_hits) {
      best_hits = hits;
      best_loc = l;
    }
  }

  const auto frac = [n_users](long hits) {
    return static_cast<double>(hits) / n_users;
  };
  long map_total = 0, prior_total = 0;
  for (int i = 0; i < n_users; ++i) {
    map_total += map_hits[i];
    prior_total += prior_hits[i];
  }

  Json out;
  out["format_version"] = 1;
  out["command"] = "attack";
  out["mode"] = "bundle";
  out["config"] = run_config_to_json(cfg);
  out["rng"] = rng_metadata();
  out["n_users"] = n_users;
  out["schedule"] = sched.c;
  Json losses;
  losses["map"] = {{"mean", frac(map_total)}, {"n_users", n_users}};
  losses["prior"] = {{"mean", frac(prior_total)}, {"n_users", n_users}};
  losses["constant_max"] = {{"mean", frac(best_hits)},
                            {"n_users", n_users},
                            {"location", best_loc}};
  out["losses"] = std::move(losses);
  Json per_user = Json::array();
  for (int i = 0; i < n_users; ++i) {
    // Visit frequency to the first sensor location, for scatter plots
    // against per-user loss under a fixed schedule.
    int visits = 0;
    for (int u = 0; u < t; ++u) visits += bundle.evals[i][u] == sched.c[0];
    per_user.push_back({{"user_id", bundle.user_ids[i]},
                        {"map", map_hits[i]},
                        {"prior", prior_hits[i]},
                        {"sensor_visit_frac", static_cast<double>(visits) / t}});
  }
  out["per_user"] = std::move(per_user);

  write_text_file(out_path, out.dump(2) + "\n");
  std::cerr << "map=" << frac(map_total) << " prior=" << frac(prior_total)
            << " constant_max=" << frac(best_hits) << " over " << n_users
            << " users -> " << out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bound

int cmd_bound_synthetic(const RunConfig& cfg, const std::string& out_path,
                        bool oracle) {
  const MarkovPrior prior = synthetic_prior(cfg.m, cfg.tau);
  int top_index = 0;
  prior.pi.maxCoeff(&top_index);
  Scenario scen;
  scen.schedule = schedule_for(cfg, cfg.m, cfg.t, -1, top_index);
  scen.others_counts.assign(cfg.t, 0);
  scen.n = 1;
  const Mechanism mech = cfg.make_mechanism();
  const BoundReport rep =
      compute_bound_report(prior, scen, mech, cfg.s, cfg.dp_delta);

  if (oracle) {
    double space = 1.0;
    for (int i = 0; i < cfg.t; ++i) space *= cfg.m;
    if (space <= 1e5) {
      const double brute = brute_ball_prob(prior, cfg.t, cfg.s);
      if (std::exp(rep.log_q) < brute - 1e-12)
        throw Error(ErrorCategory::Numeric,
                    "oracle mismatch: ball bound below enumerated maximum");
    } else {
      std::cerr << "note: --oracle skipped (M^T too large)\n";
    }
  }

  Json out;
  out["format_version"] = 1;
  out["command"] = "bound";
  out["mode"] = "synthetic";
  out["config"] = run_config_to_json(cfg);
  out["rng"] = rng_metadata();
  out["schedule"] = scen.schedule.c;
  out["report"] = bound_report_to_json(rep);
  write_text_file(out_path, out.dump(2) + "\n");
  std::cerr << "loose_ub=" << rep.loose_ub << " tight_ub=" << rep.tight_ub
            << " -> " << out_path << "\n";
  return 0;
}

int cmd_bound_bundle(const RunConfig& cfg, const std::string& out_path,
                     int threads) {
  const LoadedBundle bundle = load_bundle(cfg.bundle);
  const int t = bundle.eval_t;
  const int k = bundle.somewhere_else;
  if (cfg.s < 0 || cfg.s >= t)
    throw ConfigError("requires 0 <= s < eval_t=" + std::to_string(t));
  const Mechanism mech = cfg.make_mechanism();
  const int n_users = static_cast<int>(bundle.priors.size());

  SensorSchedule sched = schedule_for(cfg, bundle.m, t, k, 0);
  Scenario scen;
  scen.schedule = sched;
  scen.others_counts.assign(t, 0);  // bounds depend on the schedule only
  scen.n = n_users;

  std::vector<BoundReport> reports(n_users);
  std::vector<double> gaps(n_users);
  parallel_chunks(n_users, threads, [&](long b, long e, int) {
    for (long i = b; i < e; ++i) {
      reports[i] =
          compute_bound_report(bundle.priors[i], scen, mech, cfg.s, cfg.dp_delta);
      gaps[i] = spectral_gap(bundle.priors[i].p);
    }
  });

  BoundReport mean;
  mean.loose_ub = 0.0;
  mean.tight_ub = 0.0;
  int loose_vac = 0, tight_vac = 0;
  for (const auto& r : reports) {
    mean.h_x += r.h_x;
    mean.i_tilde += r.i_tilde;
    mean.log_ns = r.log_ns;      // identical across users
    mean.t_log_m = r.t_log_m;
    mean.log_q += r.log_q;
    mean.pe_loose += r.pe_loose;
    mean.pe_tight += r.pe_tight;
    mean.loose_ub += r.loose_ub;
    mean.tight_ub += r.tight_ub;
    loose_vac += r.loose_vacuous;
    tight_vac += r.tight_vacuous;
  }
  mean.h_x /= n_users;
  mean.i_tilde /= n_users;
  mean.log_q /= n_users;
  mean.pe_loose /= n_users;
  mean.pe_tight /= n_users;
  mean.loose_ub /= n_users;
  mean.tight_ub /= n_users;
  mean.dp_eps = reports.front().dp_eps;

  Json out;
  out["format_version"] = 1;
  out["command"] = "bound";
  out["mode"] = "bundle";
  out["config"] = run_config_to_json(cfg);
  out["rng"] = rng_metadata();
  out["n_users"] = n_users;
  out["schedule"] = sched.c;
  Json jm = bound_report_to_json(mean);
  jm["loose_vacuous"] = static_cast<double>(loose_vac) / n_users;
  jm["tight_vacuous"] = static_cast<double>(tight_vac) / n_users;
  out["mean_report"] = std::move(jm);
  Json per_user = Json::array();
  for (int i = 0; i < n_users; ++i) {
    Json ju = bound_report_to_json(reports[i]);
    ju["user_id"] = bundle.user_ids[i];
    ju["spectral_gap"] = gaps[i];
    per_user.push_back(std::move(ju));
  }
  out["per_user"] = std::move(per_user);

  write_text_file(out_path, out.dump(2) + "\n");
  std::cerr << "mean loose_ub=" << mean.loose_ub
            << " mean tight_ub=" << mean.tight_ub << " over " << n_users
            << " users -> " << out_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// report: parameter sweep to CSV (and optionally JSON).

int cmd_report(const SweepSpec& spec, const std::string& out_path,
               const std::string& json_path, bool oracle, int threads) {
  const std::vector<SweepRow> rows = sweep(spec, threads);
  if (oracle) {
    long checked = 0;
    for (const auto& row : rows) {
      double space = 1.0;
      for (int i = 0; i < row.t; ++i) space *= row.m;
      if (space > 1e5) continue;
      const MarkovPrior prior = synthetic_prior(row.m, row.tau);
      if (std::exp(row.bounds.log_q) <
          brute_ball_prob(prior, row.t, row.s) - 1e-12)
        throw Error(ErrorCategory::Numeric,
                    "oracle mismatch: ball bound below enumerated maximum");
      ++checked;
    }
    std::cerr << "oracle checked " << checked << " of " << rows.size()
              << " rows\n";
  }
  std::ostringstream csv;
  csv << sweep_csv_header() << '\n';
  for (const auto& row : rows) csv << sweep_row_csv(row) << '\n';
  write_text_file(out_path, csv.str());
  if (!json_path.empty()) {
    Json out;
    out["format_version"] = 1;
    out["command"] = "report";
    out["param"] = spec.param;
    out["rng"] = rng_metadata();
    Json jrows = Json::array();
    for (const auto& row : rows) {
      Json jr;
      jr["param"] = row.param;
      jr["value"] = row.value;
      jr["m"] = row.m;
      jr["t"] = row.t;
      jr["s"] = row.s;
      jr["tau"] = row.tau;
      jr["sigma"] = row.sigma;
      jr["mechanism"] =
          row.mechanism == Mechanism::Kind::Raw ? "raw" : "gaussian";
      jr["n_trials"] = row.n_trials;
      jr["master_seed"] = row.master_seed;
      jr["schedule_seed"] = row.schedule_seed;
      jr["map"] = loss_to_json(row.map_loss);
      jr["prior"] = loss_to_json(row.prior_loss);
      jr["constant_max"] = loss_to_json(row.constant_loss);
      jr["bounds"] = bound_report_to_json(row.bounds);
      jr["wall_ms"] = row.wall_ms;
      jrows.push_back(std::move(jr));
    }
    out["rows"] = std::move(jrows);
    write_text_file(json_path, out.dump(2) + "\n");
  }
  std::cerr << rows.size() << " rows -> " << out_path << "\n";
  return 0;
}

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  if (values.empty()) throw InvalidGrid("no sweep values given");
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"privacy loss of spatio-temporal count releases: attacks and "
               "Fano-type upper bounds"};
  app.require_subcommand(1);

  std::string config_path, out_path, json_out;
  bool oracle = false;
  int threads = 0;

  // fit ----------------------------------------------------------------
  FitConfig fit_cfg;
  auto* fit = app.add_subcommand("fit", "fit per-user priors from check-ins");
  auto* fit_config_opt = fit->add_option("--config", config_path, "JSON config");
  auto* o_input = fit->add_option("--input", fit_cfg.input, "check-in file");
  auto* o_format = fit->add_option("--format", fit_cfg.format, "tsv|csv");
  auto* o_window = fit->add_option("--window", fit_cfg.window_seconds,
                                   "window length in seconds");
  auto* o_topk = fit->add_option("--top-k", fit_cfg.top_k, "venues to keep");
  auto* o_evalt = fit->add_option("--eval-t", fit_cfg.eval_t,
                                  "held-out suffix length");
  auto* o_alpha = fit->add_option("--alpha", fit_cfg.alpha, "smoothing");
  auto* o_minact = fit->add_option("--min-active", fit_cfg.min_active,
                                   "min non-fill steps per user");
  auto* o_maxmal = fit->add_option("--max-malformed", fit_cfg.max_malformed,
                                   "tolerated malformed-line fraction");
  fit->add_option("--out", out_path, "output bundle path")->required();
  fit->add_option("--threads", threads, "worker cap");

  // simulate -------------------------------------------------------------
  SimulateConfig sim_cfg;
  auto* sim = app.add_subcommand("simulate", "generate synthetic check-ins");
  auto* sim_config_opt = sim->add_option("--config", config_path, "JSON config");
  auto* o_users = sim->add_option("--users", sim_cfg.users, "user count");
  auto* o_venues = sim->add_option("--venues", sim_cfg.venues, "venue count");
  auto* o_windows = sim->add_option("--windows", sim_cfg.windows, "time steps");
  auto* o_swindow = sim->add_option("--window", sim_cfg.window_seconds,
                                    "window length in seconds");
  auto* o_stau = sim->add_option("--tau", sim_cfg.tau, "mobility parameter");
  auto* o_skip = sim->add_option("--skip-prob", sim_cfg.skip_prob,
                                 "per-window probability of no check-in");
  auto* o_sseed = sim->add_option("--seed", sim_cfg.seed, "master seed");
  sim->add_option("--out", out_path, "output TSV path")->required();

  // attack / bound --------------------------------------------------------
  RunConfig run_cfg;
  const auto add_run_options = [&](CLI::App* cmd) {
    struct Opts {
      CLI::Option *config, *m, *t, *s, *tau, *sigma, *mech, *trials, *seed,
          *sched, *bundle, *delta;
    } o;
    o.config = cmd->add_option("--config", config_path, "JSON config");
    o.m = cmd->add_option("--m", run_cfg.m, "location count");
    o.t = cmd->add_option("--t", run_cfg.t, "time steps");
    o.s = cmd->add_option("--s", run_cfg.s, "success threshold");
    o.tau = cmd->add_option("--tau", run_cfg.tau, "mobility parameter");
    o.sigma = cmd->add_option("--sigma", run_cfg.sigma, "noise std");
    o.mech = cmd->add_option("--mechanism", run_cfg.mechanism, "raw|gaussian");
    o.trials = cmd->add_option("--n-trials", run_cfg.n_trials, "MC trials");
    o.seed = cmd->add_option("--seed", run_cfg.seed, "master seed");
    o.sched = cmd->add_option("--schedule", run_cfg.schedule,
                              "uniform|fixed:top|fixed:<idx>");
    o.bundle = cmd->add_option("--bundle", run_cfg.bundle,
                               "prior bundle (fitted mode)");
    o.delta = cmd->add_option("--dp-delta", run_cfg.dp_delta,
                              "delta for the DP epsilon comparison");
    cmd->add_option("--out", out_path, "output JSON path")->required();
    cmd->add_flag("--oracle", oracle, "small-instance cross-check");
    cmd->add_option("--threads", threads, "worker cap");
    return o;
  };
  auto* attack = app.add_subcommand("attack", "Monte Carlo attack losses");
  const auto attack_opts = add_run_options(attack);
  auto* bound = app.add_subcommand("bound", "estimator-independent bounds");
  const auto bound_opts = add_run_options(bound);

  // report -----------------------------------------------------------------
  SweepSpec sweep_spec;
  std::string values_csv;
  auto* report = app.add_subcommand("report", "parameter sweep table");
  auto* rep_config_opt = report->add_option("--config", config_path, "JSON config");
  auto* o_param = report->add_option("--param", sweep_spec.param,
                                     "swept parameter: M|s|T|sigma|tau");
  auto* o_values = report->add_option("--values", values_csv,
                                      "comma-separated values");
  auto* o_rm = report->add_option("--m", sweep_spec.fixed.m, "fixed M");
  auto* o_rt = report->add_option("--t", sweep_spec.fixed.t, "fixed T");
  auto* o_rs = report->add_option("--s", sweep_spec.fixed.s, "fixed s");
  auto* o_rtau = report->add_option("--tau", sweep_spec.fixed.tau, "fixed tau");
  auto* o_rsigma = report->add_option("--sigma", sweep_spec.fixed.sigma,
                                      "fixed sigma");
  std::string rep_mech = "raw";
  auto* o_rmech = report->add_option("--mechanism", rep_mech, "raw|gaussian");
  auto* o_rtrials = report->add_option("--n-trials", sweep_spec.fixed.n_trials,
                                       "MC trials per point");
  auto* o_rseed = report->add_option("--seed", sweep_spec.fixed.master_seed,
                                     "master seed");
  report->add_option("--out", out_path, "output CSV path")->required();
  report->add_option("--json-out", json_out, "also write JSON");
  report->add_option("--threads", threads, "worker cap");
  report->add_flag("--oracle", oracle, "small-instance cross-check");

  try {
    app.parse(argc, argv);

    if (fit->parsed()) {
      const Json cfg = load_config_file(fit_config_opt->count() ? config_path
                                                                : "");
      overlay(o_input, cfg, "input", fit_cfg.input);
      overlay(o_format, cfg, "format", fit_cfg.format);
      overlay(o_window, cfg, "window_seconds", fit_cfg.window_seconds);
      overlay(o_topk, cfg, "top_k", fit_cfg.top_k);
      overlay(o_evalt, cfg, "eval_t", fit_cfg.eval_t);
      overlay(o_alpha, cfg, "alpha", fit_cfg.alpha);
      overlay(o_minact, cfg, "min_active", fit_cfg.min_active);
      overlay(o_maxmal, cfg, "max_malformed", fit_cfg.max_malformed);
      return cmd_fit(fit_cfg, out_path, threads);
    }
    if (sim->parsed()) {
      const Json cfg = load_config_file(sim_config_opt->count() ? config_path
                                                                : "");
      overlay(o_users, cfg, "users", sim_cfg.users);
      overlay(o_venues, cfg, "venues", sim_cfg.venues);
      overlay(o_windows, cfg, "windows", sim_cfg.windows);
      overlay(o_swindow, cfg, "window_seconds", sim_cfg.window_seconds);
      overlay(o_stau, cfg, "tau", sim_cfg.tau);
      overlay(o_skip, cfg, "skip_prob", sim_cfg.skip_prob);
      overlay(o_sseed, cfg, "seed", sim_cfg.seed);
      return cmd_simulate(sim_cfg, out_path);
    }
    const auto overlay_run = [&](const auto& opts) {
      const Json cfg = load_config_file(opts.config->count() ? config_path : "");
      overlay(opts.m, cfg, "m", run_cfg.m);
      overlay(opts.t, cfg, "t", run_cfg.t);
      overlay(opts.s, cfg, "s", run_cfg.s);
      overlay(opts.tau, cfg, "tau", run_cfg.tau);
      overlay(opts.sigma, cfg, "sigma", run_cfg.sigma);
      overlay(opts.mech, cfg, "mechanism", run_cfg.mechanism);
      overlay(opts.trials, cfg, "n_trials", run_cfg.n_trials);
      overlay(opts.seed, cfg, "seed", run_cfg.seed);
      overlay(opts.sched, cfg, "schedule", run_cfg.schedule);
      overlay(opts.bundle, cfg, "bundle", run_cfg.bundle);
      overlay(opts.delta, cfg, "dp_delta", run_cfg.dp_delta);
      run_cfg.validate();
    };
    if (attack->parsed()) {
      overlay_run(attack_opts);
      return run_cfg.bundle.empty()
                 ? cmd_attack_synthetic(run_cfg, out_path, oracle, threads)
                 : cmd_attack_bundle(run_cfg, out_path, threads);
    }
    if (bound->parsed()) {
      overlay_run(bound_opts);
      return run_cfg.bundle.empty()
                 ? cmd_bound_synthetic(run_cfg, out_path, oracle)
                 : cmd_bound_bundle(run_cfg, out_path, threads);
    }
    if (report->parsed()) {
      const Json cfg = load_config_file(rep_config_opt->count() ? config_path
                                                                : "");
      overlay(o_param, cfg, "param", sweep_spec.param);
      overlay(o_values, cfg, "values", values_csv);
      overlay(o_rm, cfg, "m", sweep_spec.fixed.m);
      overlay(o_rt, cfg, "t", sweep_spec.fixed.t);
      overlay(o_rs, cfg, "s", sweep_spec.fixed.s);
      overlay(o_rtau, cfg, "tau", sweep_spec.fixed.tau);
      overlay(o_rsigma, cfg, "sigma", sweep_spec.fixed.sigma);
      overlay(o_rmech, cfg, "mechanism", rep_mech);
      overlay(o_rtrials, cfg, "n_trials", sweep_spec.fixed.n_trials);
      overlay(o_rseed, cfg, "seed", sweep_spec.fixed.master_seed);
      if (rep_mech != "raw" && rep_mech != "gaussian")
        throw ConfigError("mechanism must be raw or gaussian");
      sweep_spec.fixed.mechanism = rep_mech == "raw"
                                       ? Mechanism::Kind::Raw
                                       : Mechanism::Kind::Gaussian;
      sweep_spec.values = parse_values(values_csv);
      if (sweep_spec.param.empty()) throw InvalidGrid("--param is required");
      return cmd_report(sweep_spec, out_path, json_out, oracle, threads);
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const locpriv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
