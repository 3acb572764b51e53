#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "uavshare/experiment.hpp"

namespace uavshare {

using Json = nlohmann::ordered_json;

/// A scenario file: the scenario plus an optional Monte Carlo block.
struct ScenarioDocument {
  Scenario scenario;
  std::optional<ExperimentSpec> experiment;
};

/// Strict parse: unknown keys, wrong types, off-raster channels and EIRP
/// violations raise ValidationError naming the field path. Omitted keys take
/// their defaults.
ScenarioDocument parse_document(const Json& doc);
ScenarioDocument load_document(const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

Json to_json(const Scenario& scenario);
Json to_json(const ExperimentSpec& spec);
Json to_json(const ScenarioDocument& doc);
Json to_json(const RadioNode& router);
Json to_json(const Position3D& p);

Mode parse_mode(const std::string& s);
PartitionStrategy parse_strategy(const std::string& s);

}  // namespace uavshare
