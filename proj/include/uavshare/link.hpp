#pragma once

#include <span>
#include <string>
#include <vector>

#include "uavshare/antenna.hpp"
#include "uavshare/geometry.hpp"
#include "uavshare/propagation.hpp"

namespace uavshare {

enum class NodeRole { Uav, GroundStation, Router };

/// Full-duplex channel assignment of one UAV link: the UAV transmits on
/// `uplink`, the GS on `downlink`.
struct ChannelPair {
  ChannelId uplink;
  ChannelId downlink;

  friend auto operator<=>(const ChannelPair&, const ChannelPair&) = default;
};

struct RadioNode {
  std::string id;
  NodeRole role = NodeRole::Router;
  Position3D position;
  double tx_power_dbm = 0.0;
  AntennaPattern antenna;
  /// UAV and GS only.
  ChannelPair channels;
  /// Router only.
  ChannelId channel;

  static RadioNode uav(std::string id, Position3D position, double tx_power_dbm, AntennaPattern antenna,
                       ChannelPair channels);
  static RadioNode ground_station(std::string id, Position3D position, double tx_power_dbm,
                                  AntennaPattern antenna, ChannelPair channels);
  static RadioNode router(std::string id, Position3D position, double tx_power_dbm, ChannelId channel);

  friend bool operator==(const RadioNode&, const RadioNode&) = default;
};

/// Throws ValidationError on role-specific invariant violations
/// (uplink == downlink, non-omni router, off-raster channels, ...).
void validate(const RadioNode& node, int channel_count = ChannelId::kCount);

/// Minimum SINR requirements. A single terrestrial requirement covers both
/// the router and its client.
struct SharingThresholds {
  double uplink_min_db = 11.0;
  double downlink_min_db = 2.0;
  double terrestrial_min_db = 2.0;

  friend bool operator==(const SharingThresholds&, const SharingThresholds&) = default;
};

/// Radio constants shared by every link evaluation.
struct LinkModels {
  PathLossModel path_loss = PathLossModel::make();
  NoiseModel gs_noise{6.0, 10e6};
  NoiseModel uav_noise{6.0, 10e6};
  NoiseModel wlan_noise{6.0, 20e6};
  RejectionTable rejection;
  /// Router to client distance of the WLAN link under protection.
  double ue_distance_m = 5.0;
  /// Added to every path between the UAV system and a router.
  double building_entry_loss_db = 0.0;

  friend bool operator==(const LinkModels&, const LinkModels&) = default;
};

void validate(const LinkModels& models);

enum class Condition { Uplink, Downlink, Terrestrial };

const char* to_string(Condition c);

struct LinkSinr {
  /// At the GS receiver.
  double uplink_db = 0.0;
  /// At the UAV receiver.
  double downlink_db = 0.0;
  /// One entry per router, in scenario order.
  std::vector<double> terrestrial_db;
  /// Some path distance fell below the reference distance and was clamped.
  bool clamped = false;
};

struct LinkMargins {
  double uplink_db = 0.0;
  double downlink_db = 0.0;
  std::vector<double> terrestrial_db;
};

LinkMargins margins(const LinkSinr& sinr, const SharingThresholds& thresholds);

struct ConditionResult {
  bool pass = false;
  double worst_margin_db = 0.0;
  Condition binding = Condition::Uplink;
};

// Beams are assumed perfectly aligned: the GS boresight points at the UAV and
// the UAV boresight points at the GS. Routers are omni 0 dBi radiators.

double uplink_sinr(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                   const LinkModels& models);
double downlink_sinr(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                     const LinkModels& models);
/// SINR of the WLAN link protected at `router`, whose client sits
/// `models.ue_distance_m` away.
double terrestrial_sinr(const RadioNode& router, const RadioNode& uav, const RadioNode& gs,
                        const LinkModels& models);

LinkSinr evaluate_link(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                       const LinkModels& models);

/// Strict inequalities. The worst margin is the minimum over all conditions;
/// ties resolve in the order uplink, downlink, terrestrial.
ConditionResult evaluate_conditions(const LinkSinr& sinr, const SharingThresholds& thresholds);

}  // namespace uavshare
