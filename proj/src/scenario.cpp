#include "uavshare/scenario.hpp"

#include <cmath>
#include <string>

#include "uavshare/error.hpp"

namespace uavshare {

const char* to_string(Mode m) { return m == Mode::Proposed ? "proposed" : "conventional"; }

namespace {

template <typename F>
void at(const std::string& prefix, F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    throw ValidationError::nested(prefix, e);
  }
}

void check_eirp(const std::string& path, double tx_power_dbm, const AntennaPattern& antenna, double limit) {
  const double e = eirp(antenna, tx_power_dbm);
  if (e > limit + 1e-9) {
    throw ValidationError(path, "EIRP " + std::to_string(e) + " dBm exceeds the limit of " + std::to_string(limit) +
                                    " dBm");
  }
}

}  // namespace

void validate(const Scenario& s) {
  at("$.bounds", [&] { validate(s.bounds); });
  at("$.models", [&] { validate(s.models); });
  if (!std::isfinite(s.thresholds.uplink_min_db) || !std::isfinite(s.thresholds.downlink_min_db) ||
      !std::isfinite(s.thresholds.terrestrial_min_db)) {
    throw ValidationError("$.thresholds", "thresholds must be finite");
  }
  if (s.channel_count < 2 || s.channel_count > ChannelId::kCount) {
    throw ValidationError("$.channel_count", "must be in [2, " + std::to_string(ChannelId::kCount) + "]");
  }
  if (!std::isfinite(s.eirp_limit_dbm)) throw ValidationError("$.eirp_limit_dbm", "must be finite");
  if (!(s.grid.resolution_m > 0.0)) throw ValidationError("$.grid.resolution_m", "must be > 0");
  if (!(s.grid.altitude_m > 0.0)) throw ValidationError("$.grid.altitude_m", "UAV altitude must be > 0");
  if (!(s.grid.gs_candidate_resolution_m > 0.0)) {
    throw ValidationError("$.grid.gs_candidate_resolution_m", "must be > 0");
  }

  const auto& gs = s.ground_station;
  at("$.ground_station.position", [&] { validate(gs.position); });
  if (!s.bounds.contains_horizontal(gs.position.x, gs.position.y)) {
    throw ValidationError("$.ground_station.position", "ground station must lie inside the bounds");
  }
  at("$.ground_station.antenna", [&] { validate(gs.antenna); });
  if (!std::isfinite(gs.tx_power_dbm)) throw ValidationError("$.ground_station.tx_power_dbm", "must be finite");
  check_eirp("$.ground_station", gs.tx_power_dbm, gs.antenna, s.eirp_limit_dbm);

  if (s.uavs.empty()) throw ValidationError("$.uavs", "at least one UAV is required");
  for (std::size_t i = 0; i < s.uavs.size(); ++i) {
    const std::string p = "$.uavs[" + std::to_string(i) + "]";
    const UavConfig& u = s.uavs[i];
    if (!(u.altitude_m > 0.0)) throw ValidationError(p + ".altitude_m", "UAV altitude must be > 0");
    RadioNode node = RadioNode::uav(u.id, {0.0, 0.0, u.altitude_m}, u.tx_power_dbm, u.antenna, u.channels);
    at(p, [&] { validate(node, s.channel_count); });
    check_eirp(p, u.tx_power_dbm, u.antenna, s.eirp_limit_dbm);
  }

  for (std::size_t i = 0; i < s.routers.size(); ++i) {
    const std::string p = "$.routers[" + std::to_string(i) + "]";
    const RadioNode& r = s.routers[i];
    if (r.role != NodeRole::Router) throw ValidationError(p, "router entries must have role Router");
    at(p, [&] { validate(r, s.channel_count); });
    check_eirp(p, r.tx_power_dbm, r.antenna, s.eirp_limit_dbm);
  }

  if (s.mode == Mode::Conventional) {
    if (gs.antenna.kind != AntennaPattern::Kind::Omni || gs.antenna.peak_gain_dbi != 0.0) {
      throw ValidationError("$.ground_station.antenna", "conventional mode requires an omni 0 dBi antenna");
    }
    for (std::size_t i = 0; i < s.uavs.size(); ++i) {
      const auto& a = s.uavs[i].antenna;
      if (a.kind != AntennaPattern::Kind::Omni || a.peak_gain_dbi != 0.0) {
        throw ValidationError("$.uavs[" + std::to_string(i) + "].antenna",
                              "conventional mode requires an omni 0 dBi antenna");
      }
    }
  }
}

Scenario to_conventional(Scenario s) {
  s.mode = Mode::Conventional;
  s.ground_station.antenna = AntennaPattern::omni(0.0);
  s.ground_station.tx_power_dbm = s.eirp_limit_dbm;
  for (UavConfig& u : s.uavs) {
    u.antenna = AntennaPattern::omni(0.0);
    u.tx_power_dbm = s.eirp_limit_dbm;
  }
  return s;
}

Scenario with_mode(Scenario s, Mode mode) {
  if (mode == Mode::Conventional) return to_conventional(std::move(s));
  s.mode = mode;
  return s;
}

RadioNode make_uav_node(const Scenario& s, std::size_t uav_index, const Position3D& position, ChannelPair channels) {
  const UavConfig& u = s.uavs.at(uav_index);
  return RadioNode::uav(u.id, position, u.tx_power_dbm, u.antenna, channels);
}

RadioNode make_gs_node(const Scenario& s, const Position3D& position, ChannelPair channels) {
  const GroundStationConfig& g = s.ground_station;
  return RadioNode::ground_station(g.id, position, g.tx_power_dbm, g.antenna, channels);
}

}  // namespace uavshare
