#pragma once

#include <string>

#include <json.hpp>

#include "locpriv/bounds.hpp"
#include "locpriv/markov.hpp"
#include "locpriv/mechanism.hpp"
#include "locpriv/montecarlo.hpp"

namespace locpriv {

using Json = nlohmann::ordered_json;

// Fixed field orders so identical inputs serialize to identical bytes.

Json prior_to_json(const MarkovPrior& prior);       // {"m", "pi", "p"}
MarkovPrior prior_from_json(const Json& j);

Json scenario_to_json(const Scenario& scen);        // {"c", "others", "n"}
Scenario scenario_from_json(const Json& j);

Json bound_report_to_json(const BoundReport& rep);
Json loss_to_json(const LossEstimate& loss);

// RNG provenance block embedded in every output file.
Json rng_metadata();

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace locpriv
