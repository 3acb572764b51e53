#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "uavshare/planner.hpp"

namespace uavshare {

/// Router channel relative to the UAV uplink channel.
enum class ChannelRelation { CoChannel, Adjacent, NextAdjacent };

const char* to_string(ChannelRelation r);

/// Channel offset from `uplink`. The upward neighbor is used when it stays on
/// the raster and inside the WLAN band, otherwise the downward one.
ChannelId related_channel(ChannelId uplink, ChannelRelation relation, int channel_count = ChannelId::kCount);

struct RouterTemplate {
  std::vector<ChannelRelation> channel_mix{ChannelRelation::CoChannel, ChannelRelation::CoChannel,
                                           ChannelRelation::Adjacent, ChannelRelation::NextAdjacent};
  double height_m = 1.5;
  double tx_power_dbm = 20.0;

  friend bool operator==(const RouterTemplate&, const RouterTemplate&) = default;
};

/// Uniform placement over `bounds`. For router k (in order) x then y are
/// drawn from SeededRng(seed); router k takes channel_mix[k % size].
std::vector<RadioNode> generate_routers(std::uint64_t seed, const AreaBounds& bounds, int count,
                                        const RouterTemplate& tmpl, ChannelId uplink,
                                        int channel_count = ChannelId::kCount);

struct PlannerOptions {
  double gs_candidate_resolution_m = 50.0;
  /// Also partition into `uavs` sub-areas and allocate channels per trial.
  bool allocate = false;
  int uavs = 3;
  PartitionStrategy strategy = PartitionStrategy::Strips;

  friend bool operator==(const PlannerOptions&, const PlannerOptions&) = default;
};

struct ExperimentSpec {
  int trials = 30;
  std::uint64_t seed = 1;
  int router_count = 4;
  RouterTemplate router_template;
  PlannerOptions planner;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

void validate(const ExperimentSpec& spec);

struct TrialRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::vector<RadioNode> routers;
  Position3D best_gs;
  double optimized_ratio = 0.0;
  double center_ratio = 0.0;
  // Filled when PlannerOptions::allocate is set.
  std::optional<double> combined_ratio;
  std::optional<UniformPairResult> best_uniform;
  std::vector<ChannelPair> allocation;
  bool allocation_warning = false;
};

struct RatioStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

RatioStats summarize(const std::vector<double>& values);

struct ExperimentResult {
  ExperimentSpec spec;
  std::vector<TrialRecord> trials;
  RatioStats optimized;
  RatioStats center;
  std::optional<RatioStats> combined;
};

/// Runs `spec.trials` independent trials. Trial i draws its routers from
/// derive_seed(spec.seed, i), so any trial can be replayed alone. `progress`
/// (if set) is called after each trial.
ExperimentResult run_experiment(const ExperimentSpec& spec, const Scenario& base, const GridSpec& grid,
                                int threads = 0, void (*progress)(int done, int total) = nullptr);

/// A single trial, as run_experiment would run it.
TrialRecord run_trial(const ExperimentSpec& spec, const Scenario& base, const GridSpec& grid, int index,
                      int threads = 0);

}  // namespace uavshare
