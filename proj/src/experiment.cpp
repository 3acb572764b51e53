#include "uavshare/experiment.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "uavshare/error.hpp"
#include "uavshare/random.hpp"

namespace uavshare {

const char* to_string(ChannelRelation r) {
  switch (r) {
    case ChannelRelation::CoChannel: return "co";
    case ChannelRelation::Adjacent: return "adjacent";
    case ChannelRelation::NextAdjacent: return "next_adjacent";
  }
  return "?";
}

ChannelId related_channel(ChannelId uplink, ChannelRelation relation, int channel_count) {
  const int offset = relation == ChannelRelation::CoChannel ? 0 : relation == ChannelRelation::Adjacent ? 1 : 2;
  const ChannelId up{uplink.index + offset};
  if (up.index < channel_count && up.overlaps_wlan()) return up;
  const ChannelId down{uplink.index - offset};
  if (down.index >= 0) return down;
  return ChannelId{std::clamp(up.index, 0, channel_count - 1)};
}

std::vector<RadioNode> generate_routers(std::uint64_t seed, const AreaBounds& bounds, int count,
                                        const RouterTemplate& tmpl, ChannelId uplink, int channel_count) {
  if (count < 0) throw ValidationError("router_count", "must be >= 0");
  if (count > 0 && tmpl.channel_mix.empty()) throw ValidationError("channel_mix", "must not be empty");
  SeededRng rng(seed);
  std::vector<RadioNode> routers;
  routers.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double x = rng.uniform(bounds.x_min, bounds.x_max);
    const double y = rng.uniform(bounds.y_min, bounds.y_max);
    routers.push_back(RadioNode::router("router-" + std::to_string(k + 1), {x, y, tmpl.height_m}, tmpl.tx_power_dbm,
                                        related_channel(uplink, tmpl.channel_mix[static_cast<std::size_t>(k) % tmpl.channel_mix.size()],
                                                        channel_count)));
  }
  return routers;
}

void validate(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw ValidationError("$.experiment.trials", "must be >= 1");
  if (spec.router_count < 0) throw ValidationError("$.experiment.router_count", "must be >= 0");
  if (spec.router_template.channel_mix.empty()) {
    throw ValidationError("$.experiment.router_template.channel_mix", "must not be empty");
  }
  if (!(spec.router_template.height_m >= 0.0)) {
    throw ValidationError("$.experiment.router_template.height_m", "must be >= 0");
  }
  if (!(spec.planner.gs_candidate_resolution_m > 0.0)) {
    throw ValidationError("$.experiment.planner.gs_candidate_resolution_m", "must be > 0");
  }
  if (spec.planner.uavs < 1) throw ValidationError("$.experiment.planner.uavs", "must be >= 1");
}

RatioStats summarize(const std::vector<double>& values) {
  RatioStats s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  return s;
}

TrialRecord run_trial(const ExperimentSpec& spec, const Scenario& base, const GridSpec& grid, int index, int threads) {
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(index));

  Scenario scenario = base;
  scenario.routers = generate_routers(rec.seed, base.bounds, spec.router_count, spec.router_template,
                                      base.uavs.at(0).channels.uplink, base.channel_count);
  validate(scenario);
  rec.routers = scenario.routers;

  const PlacementResult placement = optimize_gs(scenario, spec.planner.gs_candidate_resolution_m, grid, threads);
  rec.best_gs = placement.best_position;
  rec.optimized_ratio = placement.best_ratio;

  const Position3D center{base.bounds.center_x(), base.bounds.center_y(), base.ground_station.position.z};
  const GridKernel center_kernel(scenario, center, scenario.uavs.at(0).channels);
  rec.center_ratio = static_cast<double>(count_flyable(center_kernel, grid)) / static_cast<double>(grid.size());

  if (spec.planner.allocate) {
    std::vector<SubArea> areas =
        partition_area(scenario.bounds, spec.planner.uavs, spec.planner.strategy, rec.best_gs, grid);
    const AllocationPlan plan = allocate_channels(scenario, std::move(areas), grid, rec.best_gs, threads);
    rec.combined_ratio = plan.combined_ratio;
    rec.allocation_warning = plan.warning;
    for (const SubArea& a : plan.sub_areas) rec.allocation.push_back({a.assigned_uplink, a.assigned_downlink});
    rec.best_uniform = best_uniform_pair(scenario, grid, rec.best_gs, threads);
  }
  return rec;
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const Scenario& base, const GridSpec& grid, int threads,
                                void (*progress)(int done, int total)) {
  validate(spec);
  validate(base);
  ExperimentResult result;
  result.spec = spec;
  std::vector<double> optimized;
  std::vector<double> center;
  std::vector<double> combined;
  for (int i = 0; i < spec.trials; ++i) {
    try {
      result.trials.push_back(run_trial(spec, base, grid, i, threads));
    } catch (const Error& e) {
      throw Error("trial " + std::to_string(i) + " (seed " + std::to_string(derive_seed(spec.seed, i)) +
                  ") failed: " + e.what());
    }
    const TrialRecord& t = result.trials.back();
    optimized.push_back(t.optimized_ratio);
    center.push_back(t.center_ratio);
    if (t.combined_ratio) combined.push_back(*t.combined_ratio);
    if (progress != nullptr) progress(i + 1, spec.trials);
  }
  result.optimized = summarize(optimized);
  result.center = summarize(center);
  if (!combined.empty()) result.combined = summarize(combined);
  return result;
}

}  // namespace uavshare
