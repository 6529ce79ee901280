#include "locpriv/serialize.hpp"

#include <fstream>

#include "locpriv/errors.hpp"

namespace locpriv {

Json prior_to_json(const MarkovPrior& prior) {
  Json j;
  j["m"] = prior.m;
  j["pi"] = std::vector<double>(prior.pi.data(), prior.pi.data() + prior.m);
  std::vector<std::vector<double>> rows(prior.m);
  for (int i = 0; i < prior.m; ++i) {
    rows[i].resize(prior.m);
    for (int k = 0; k < prior.m; ++k) rows[i][k] = prior.p(i, k);
  }
  j["p"] = rows;
  return j;
}

MarkovPrior prior_from_json(const Json& j) {
  const int m = j.at("m").get<int>();
  const auto pi_vec = j.at("pi").get<std::vector<double>>();
  const auto p_rows = j.at("p").get<std::vector<std::vector<double>>>();
  if (static_cast<int>(pi_vec.size()) != m ||
      static_cast<int>(p_rows.size()) != m)
    throw DimensionMismatch("prior JSON dimensions inconsistent with m");
  Eigen::VectorXd pi(m);
  Eigen::MatrixXd p(m, m);
  for (int i = 0; i < m; ++i) {
    pi(i) = pi_vec[i];
    if (static_cast<int>(p_rows[i].size()) != m)
      throw DimensionMismatch("prior JSON row length mismatch");
    for (int k = 0; k < m; ++k) p(i, k) = p_rows[i][k];
  }
  return validate_prior(pi, p);
}

Json scenario_to_json(const Scenario& scen) {
  Json j;
  j["c"] = scen.schedule.c;
  j["others"] = scen.others_counts;
  j["n"] = scen.n;
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario scen;
  scen.schedule.c = j.at("c").get<std::vector<LocationId>>();
  scen.others_counts = j.at("others").get<std::vector<long long>>();
  scen.n = j.at("n").get<long long>();
  if (scen.others_counts.size() != scen.schedule.c.size())
    throw DimensionMismatch("scenario JSON lengths differ");
  for (long long o : scen.others_counts)
    if (o < 0 || o > scen.n - 1)
      throw ProbabilityOutOfRange("others_counts entry outside [0, n-1]");
  return scen;
}

Json bound_report_to_json(const BoundReport& rep) {
  Json j;
  j["h_x"] = rep.h_x;
  j["i_tilde"] = rep.i_tilde;
  j["log_ns"] = rep.log_ns;
  j["t_log_m"] = rep.t_log_m;
  j["log_q"] = rep.log_q;
  j["pe_loose"] = rep.pe_loose;
  j["pe_tight"] = rep.pe_tight;
  j["loose_ub"] = rep.loose_ub;
  j["tight_ub"] = rep.tight_ub;
  j["loose_vacuous"] = rep.loose_vacuous;
  j["tight_vacuous"] = rep.tight_vacuous;
  if (rep.dp_eps)
    j["dp_eps"] = *rep.dp_eps;
  else
    j["dp_eps"] = nullptr;
  return j;
}

Json loss_to_json(const LossEstimate& loss) {
  Json j;
  j["estimator"] = estimator_kind_name(loss.kind);
  j["mean"] = loss.mean;
  j["stderr"] = loss.stderr_;
  j["n_trials"] = loss.n_trials;
  if (loss.constant_loc >= 0) j["location"] = loss.constant_loc;
  return j;
}

Json rng_metadata() {
  Json j;
  j["generator"] = "mt19937_64";
  j["uniform"] = "(next_u64() >> 11) * 2^-53";
  j["normal"] = "box-muller cosine branch, two uniforms per draw";
  j["seed_derivation"] =
      "mix64(mix64(master + 0x9e3779b97f4a7c15*(trial+1)) ^ "
      "(0xd1b54a32d192ed03*(stream+1))), mix64 = splitmix64 finalizer";
  j["streams"] = {{"trajectory", 0}, {"noise", 1}, {"schedule", 2},
                  {"simulate", 3}};
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

}  // namespace locpriv
