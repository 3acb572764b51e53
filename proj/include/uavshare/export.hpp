#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "uavshare/experiment.hpp"
#include "uavshare/scenario_io.hpp"

namespace uavshare {

// CSV map: header "x,y,pass,worst_margin_db,binding_condition", then one row
// per grid point with j (north) as the outer loop and i (east) inner.
// x and y use 3 decimals, margins 6; pass is 0 or 1; binding is one of
// uplink, downlink, terrestrial.
std::string grid_csv(const FlyableGrid& grid);

// Binary PGM (P5), width nx, height ny, maxval 255, first row = northmost.
// Pass = 255; failing points are shaded by their binding condition.
constexpr unsigned char kPixelPass = 255;
constexpr unsigned char kPixelUplink = 40;
constexpr unsigned char kPixelDownlink = 100;
constexpr unsigned char kPixelTerrestrial = 160;

std::string grid_pgm(const FlyableGrid& grid);

/// Rebuilds the PGM from a grid_csv() document without recomputation.
/// Throws ValidationError on malformed input.
std::string render_csv_to_pgm(const std::string& csv);

/// Per-trial rows: trial,seed,gs_x,gs_y,optimized_ratio,center_ratio,
/// combined_ratio,best_uniform_ratio (empty cells when not computed).
std::string trials_csv(const ExperimentResult& result);

Json grid_summary(const FlyableGrid& grid);
Json placement_summary(const PlacementResult& placement);
Json plan_summary(const AllocationPlan& plan);
Json experiment_summary(const ExperimentResult& result);

/// Pretty-printed with two-space indent and a trailing newline. Key order is
/// insertion order.
std::string dump(const Json& j);

/// Throws IoError if the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace uavshare
