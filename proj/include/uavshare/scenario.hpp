#pragma once

#include <string>
#include <vector>

#include "uavshare/link.hpp"

namespace uavshare {

enum class Mode { Proposed, Conventional };

const char* to_string(Mode m);

struct UavConfig {
  std::string id = "uav-1";
  double altitude_m = 30.0;
  double tx_power_dbm = 0.0;
  AntennaPattern antenna = AntennaPattern::directional(15.0, 36.0, 25.0);
  ChannelPair channels{ChannelId{1}, ChannelId{4}};

  friend bool operator==(const UavConfig&, const UavConfig&) = default;
};

struct GroundStationConfig {
  std::string id = "gs";
  Position3D position{500.0, 500.0, 2.0};
  double tx_power_dbm = 11.0;
  AntennaPattern antenna = AntennaPattern::directional(25.0, 4.0, 25.0);

  friend bool operator==(const GroundStationConfig&, const GroundStationConfig&) = default;
};

struct GridDefaults {
  double resolution_m = 10.0;
  double altitude_m = 30.0;
  double gs_candidate_resolution_m = 50.0;

  friend bool operator==(const GridDefaults&, const GridDefaults&) = default;
};

/// Everything needed to evaluate the sharing conditions over a target area.
/// Defaults reproduce the 5.7 GHz UAV video link case.
struct Scenario {
  static constexpr int kSchemaVersion = 1;

  Mode mode = Mode::Proposed;
  AreaBounds bounds;
  GroundStationConfig ground_station;
  std::vector<UavConfig> uavs{UavConfig{}};
  std::vector<RadioNode> routers;
  LinkModels models;
  SharingThresholds thresholds;
  /// Number of raster channels available to the UAV system (first N of the
  /// 5650-5750 MHz raster).
  int channel_count = ChannelId::kCount;
  double eirp_limit_dbm = 36.0;
  GridDefaults grid;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ValidationError with a field path on the first violated invariant.
void validate(const Scenario& scenario);

/// Conventional baseline: UAV and GS antennas become omni 0 dBi and both
/// transmit at the EIRP limit. Idempotent.
Scenario to_conventional(Scenario scenario);

/// Applies the mode's constraints (a no-op for Proposed).
Scenario with_mode(Scenario scenario, Mode mode);

/// UAV node for `uavs[uav_index]` placed at `position`.
RadioNode make_uav_node(const Scenario& scenario, std::size_t uav_index, const Position3D& position,
                        ChannelPair channels);
RadioNode make_gs_node(const Scenario& scenario, const Position3D& position, ChannelPair channels);

}  // namespace uavshare
