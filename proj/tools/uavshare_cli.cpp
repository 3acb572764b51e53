// Command-line front end: evaluate, optimize-gs, allocate, monte-carlo, render.
//
// Exit codes: 0 success, 2 usage error, 3 validation error, 4 IO error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "uavshare/error.hpp"
#include "uavshare/export.hpp"
#include "uavshare/scenario_io.hpp"

namespace fs = std::filesystem;
using namespace uavshare;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
  std::string scenario;
  std::string out_dir = ".";
  std::string mode;
  std::optional<double> altitude;
  std::optional<double> resolution;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scenario", f.scenario, "Scenario JSON file")->required();
  cmd->add_option("--out", f.out_dir, "Output directory (created if missing)");
  cmd->add_option("--mode", f.mode, "Override scenario mode: proposed | conventional");
  cmd->add_option("--altitude", f.altitude, "UAV altitude in meters");
  cmd->add_option("--resolution", f.resolution, "Grid resolution in meters");
  cmd->add_option("--threads", f.threads, "Worker threads, 0 = all available")->check(CLI::NonNegativeNumber);
}

struct Loaded {
  ScenarioDocument doc;
  GridSpec grid;
  Json overrides = Json::object();
};

Loaded load(const CommonFlags& f) {
  Loaded l;
  l.doc = load_document(f.scenario);
  Scenario& s = l.doc.scenario;
  if (!f.mode.empty()) {
    s = with_mode(std::move(s), parse_mode(f.mode));
    l.overrides["mode"] = f.mode;
  }
  if (f.altitude) {
    s.grid.altitude_m = *f.altitude;
    for (UavConfig& u : s.uavs) u.altitude_m = *f.altitude;
    l.overrides["altitude_m"] = *f.altitude;
  }
  if (f.resolution) {
    s.grid.resolution_m = *f.resolution;
    l.overrides["resolution_m"] = *f.resolution;
  }
  validate(s);
  l.grid = default_grid(s);
  validate(l.grid);
  return l;
}

Position3D parse_gs(const std::string& text, const Scenario& s) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw ValidationError("--gs", "expected x,y or x,y,z in meters, got '" + text + "'");
    }
  }
  if (v.size() != 2 && v.size() != 3) throw ValidationError("--gs", "expected x,y or x,y,z in meters");
  const Position3D p{v[0], v[1], v.size() == 3 ? v[2] : s.ground_station.position.z};
  validate(p);
  if (!s.bounds.contains_horizontal(p.x, p.y)) throw ValidationError("--gs", "position lies outside the bounds");
  return p;
}

Json envelope(const std::string& command) {
  return Json{{"schema_version", Scenario::kSchemaVersion}, {"command", command}};
}

void finish_envelope(Json& j, const Loaded& l) {
  j["overrides"] = l.overrides;
  j["parameters"] = to_json(l.doc);
}

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return fs::path(dir);
}

void write_map(const fs::path& out, const FlyableGrid& grid) {
  write_file(out / "flyable_map.csv", grid_csv(grid));
  write_file(out / "flyable_map.pgm", grid_pgm(grid));
}

void progress(int done, int total) { std::fprintf(stderr, "trial %d/%d done\n", done, total); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum sharing planner for directional-antenna UAV links over WLAN"};
  app.require_subcommand(1);

  CommonFlags eval_flags;
  std::string eval_gs;
  auto* evaluate = app.add_subcommand("evaluate", "Flyable-area map for one GS position");
  add_common(evaluate, eval_flags);
  evaluate->add_option("--gs", eval_gs, "GS position x,y[,z] (default: scenario GS)");

  CommonFlags opt_flags;
  std::optional<double> opt_candidates;
  auto* optimize = app.add_subcommand("optimize-gs", "Exhaustive GS placement search");
  add_common(optimize, opt_flags);
  optimize->add_option("--candidate-resolution", opt_candidates, "GS candidate spacing in meters");

  CommonFlags alloc_flags;
  int alloc_uavs = 3;
  std::string alloc_strategy = "strips";
  std::string alloc_gs;
  std::optional<double> alloc_candidates;
  auto* allocate = app.add_subcommand("allocate", "Partition the area and allocate channel pairs per sub-area");
  add_common(allocate, alloc_flags);
  allocate->add_option("--uavs", alloc_uavs, "Number of UAVs / sub-areas")->check(CLI::PositiveNumber);
  allocate->add_option("--strategy", alloc_strategy, "strips | sectors");
  allocate->add_option("--gs", alloc_gs, "GS position x,y[,z] (default: optimized)");
  allocate->add_option("--candidate-resolution", alloc_candidates, "GS candidate spacing when optimizing");

  CommonFlags mc_flags;
  std::optional<int> mc_trials;
  std::optional<std::uint64_t> mc_seed;
  std::optional<double> mc_candidates;
  std::optional<int> mc_uavs;
  std::string mc_strategy;
  bool mc_allocate = false;
  auto* monte = app.add_subcommand("monte-carlo", "Seeded router arrangements, GS optimization per trial");
  add_common(monte, mc_flags);
  monte->add_option("--trials", mc_trials, "Number of trials")->check(CLI::PositiveNumber);
  monte->add_option("--seed", mc_seed, "Master seed");
  monte->add_option("--candidate-resolution", mc_candidates, "GS candidate spacing in meters");
  monte->add_flag("--allocate", mc_allocate, "Also partition and allocate channels per trial");
  monte->add_option("--uavs", mc_uavs, "Sub-areas when allocating")->check(CLI::PositiveNumber);
  monte->add_option("--strategy", mc_strategy, "strips | sectors");

  std::string render_input;
  std::string render_output;
  auto* render = app.add_subcommand("render", "Convert a map CSV into a PGM raster");
  render->add_option("input", render_input, "Map CSV written by evaluate/optimize-gs/allocate")->required();
  render->add_option("--output", render_output, "Output PGM (default: input with .pgm extension)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*evaluate) {
      const Loaded l = load(eval_flags);
      const Scenario& s = l.doc.scenario;
      const Position3D gs = eval_gs.empty() ? s.ground_station.position : parse_gs(eval_gs, s);
      const FlyableGrid grid = compute_flyable_grid(s, gs, l.grid, eval_flags.threads);
      const fs::path out = prepare_out(eval_flags.out_dir);
      write_map(out, grid);
      Json j = envelope("evaluate");
      j["flyable_ratio"] = grid.flyable_ratio;
      j["result"] = grid_summary(grid);
      finish_envelope(j, l);
      write_file(out / "summary.json", dump(j));
      std::printf("flyable_ratio %.6f\n", grid.flyable_ratio);
    } else if (*optimize) {
      const Loaded l = load(opt_flags);
      const Scenario& s = l.doc.scenario;
      const double res = opt_candidates.value_or(s.grid.gs_candidate_resolution_m);
      std::fprintf(stderr, "evaluating %zu GS candidates\n", gs_candidates(s, res).size());
      const PlacementResult placement = optimize_gs(s, res, l.grid, opt_flags.threads);
      const FlyableGrid grid = compute_flyable_grid(s, placement.best_position, l.grid, opt_flags.threads);
      const fs::path out = prepare_out(opt_flags.out_dir);
      write_map(out, grid);
      Json j = envelope("optimize-gs");
      j["flyable_ratio"] = placement.best_ratio;
      j["placement"] = placement_summary(placement);
      j["result"] = grid_summary(grid);
      finish_envelope(j, l);
      write_file(out / "summary.json", dump(j));
      std::printf("best_gs %.3f,%.3f flyable_ratio %.6f\n", placement.best_position.x, placement.best_position.y,
                  placement.best_ratio);
    } else if (*allocate) {
      Loaded l = load(alloc_flags);
      const Scenario& s = l.doc.scenario;
      const PartitionStrategy strategy = parse_strategy(alloc_strategy);
      Position3D gs;
      if (alloc_gs.empty()) {
        const double res = alloc_candidates.value_or(s.grid.gs_candidate_resolution_m);
        std::fprintf(stderr, "optimizing GS over %zu candidates\n", gs_candidates(s, res).size());
        gs = optimize_gs(s, res, l.grid, alloc_flags.threads).best_position;
      } else {
        gs = parse_gs(alloc_gs, s);
      }
      const AllocationPlan plan = allocate_channels(
          s, partition_area(s.bounds, alloc_uavs, strategy, gs, l.grid), l.grid, gs, alloc_flags.threads);
      const fs::path out = prepare_out(alloc_flags.out_dir);
      write_map(out, plan.combined_grid);
      Json j = envelope("allocate");
      j["flyable_ratio"] = plan.combined_ratio;
      j["uavs"] = alloc_uavs;
      j["strategy"] = to_string(strategy);
      j["plan"] = plan_summary(plan);
      finish_envelope(j, l);
      write_file(out / "summary.json", dump(j));
      if (plan.warning) std::fprintf(stderr, "warning: some sub-area has no feasible channel pair\n");
      std::printf("combined_ratio %.6f\n", plan.combined_ratio);
      for (const SubArea& a : plan.sub_areas) {
        std::printf("sub_area %d uplink %d downlink %d ratio %.6f\n", a.index, a.assigned_uplink.index,
                    a.assigned_downlink.index, a.ratio);
      }
    } else if (*monte) {
      Loaded l = load(mc_flags);
      ExperimentSpec spec = l.doc.experiment.value_or(ExperimentSpec{});
      if (mc_trials) spec.trials = *mc_trials, l.overrides["trials"] = *mc_trials;
      if (mc_seed) spec.seed = *mc_seed, l.overrides["seed"] = *mc_seed;
      if (mc_candidates) {
        spec.planner.gs_candidate_resolution_m = *mc_candidates;
        l.overrides["gs_candidate_resolution_m"] = *mc_candidates;
      }
      if (mc_allocate) spec.planner.allocate = true, l.overrides["allocate"] = true;
      if (mc_uavs) spec.planner.uavs = *mc_uavs, l.overrides["uavs"] = *mc_uavs;
      if (!mc_strategy.empty()) {
        spec.planner.strategy = parse_strategy(mc_strategy);
        l.overrides["strategy"] = mc_strategy;
      }
      validate(spec);
      l.doc.experiment = spec;
      const ExperimentResult result = run_experiment(spec, l.doc.scenario, l.grid, mc_flags.threads, progress);
      const fs::path out = prepare_out(mc_flags.out_dir);
      write_file(out / "trials.csv", trials_csv(result));
      Json j = envelope("monte-carlo");
      j["flyable_ratio"] = result.optimized.mean;
      j["result"] = experiment_summary(result);
      finish_envelope(j, l);
      write_file(out / "summary.json", dump(j));
      std::printf("mean_flyable_ratio %.6f min %.6f max %.6f\n", result.optimized.mean, result.optimized.min,
                  result.optimized.max);
      if (result.combined) std::printf("mean_combined_ratio %.6f\n", result.combined->mean);
    } else if (*render) {
      fs::path output = render_output.empty() ? fs::path(render_input).replace_extension(".pgm") : fs::path(render_output);
      write_file(output, render_csv_to_pgm(read_file(render_input)));
      std::printf("%s\n", output.string().c_str());
    }
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return 0;
}
