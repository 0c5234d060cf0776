#pragma once

#include "mx3/pipeline.hpp"

#include <json.hpp>

#include <string>

namespace mx3 {

using Json = nlohmann::ordered_json;

// One report row; leading keys follow the published row schema
// (id, n_vars, n_cons, baseline, sdp1, sdp2, final, opt, margin,
// consistency, seed, ms), diagnostics follow.
Json to_json(const PipelineReport& r);
Json to_json(const ExperimentRow& row);
Json to_json(const ExperimentAggregate& a);
Json to_json(const SdpConfig& cfg);
Json to_json(const PipelineConfig& cfg);
Json to_json(const FamilySpec& f);

// Numeric columns of a row, comma separated; header from csv_header().
std::string csv_header();
std::string to_csv(const ExperimentRow& row);

}  // namespace mx3
