#include "uavshare/link.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "uavshare/error.hpp"

namespace uavshare {

RadioNode RadioNode::uav(std::string id, Position3D position, double tx_power_dbm, AntennaPattern antenna,
                         ChannelPair channels) {
  RadioNode n;
  n.id = std::move(id);
  n.role = NodeRole::Uav;
  n.position = position;
  n.tx_power_dbm = tx_power_dbm;
  n.antenna = antenna;
  n.channels = channels;
  return n;
}

RadioNode RadioNode::ground_station(std::string id, Position3D position, double tx_power_dbm,
                                    AntennaPattern antenna, ChannelPair channels) {
  RadioNode n = uav(std::move(id), position, tx_power_dbm, antenna, channels);
  n.role = NodeRole::GroundStation;
  return n;
}

RadioNode RadioNode::router(std::string id, Position3D position, double tx_power_dbm, ChannelId channel) {
  RadioNode n;
  n.id = std::move(id);
  n.role = NodeRole::Router;
  n.position = position;
  n.tx_power_dbm = tx_power_dbm;
  n.antenna = AntennaPattern::omni(0.0);
  n.channel = channel;
  return n;
}

void validate(const RadioNode& node, int channel_count) {
  try {
    validate(node.position);
  } catch (const ValidationError& e) {
    throw ValidationError::nested("position", e);
  }
  if (!std::isfinite(node.tx_power_dbm)) throw ValidationError("tx_power_dbm", "must be finite");
  try {
    validate(node.antenna);
  } catch (const ValidationError& e) {
    throw ValidationError::nested("antenna", e);
  }
  auto check_channel = [&](ChannelId c, const char* field) {
    if (c.index < 0 || c.index >= channel_count) {
      throw ValidationError(field, "channel index " + std::to_string(c.index) + " is off the raster [0, " +
                                       std::to_string(channel_count - 1) + "]");
    }
  };
  if (node.role == NodeRole::Router) {
    if (node.antenna.kind != AntennaPattern::Kind::Omni) throw ValidationError("antenna", "routers are omni");
    check_channel(node.channel, "channel");
  } else {
    check_channel(node.channels.uplink, "uplink");
    check_channel(node.channels.downlink, "downlink");
    if (node.channels.uplink == node.channels.downlink) {
      throw ValidationError("downlink", "uplink and downlink must use different channels");
    }
  }
}

void validate(const LinkModels& m) {
  try {
    validate(m.path_loss);
  } catch (const ValidationError& e) {
    throw ValidationError::nested("path_loss", e);
  }
  const std::pair<const char*, const NoiseModel*> noises[] = {
      {"gs_noise", &m.gs_noise}, {"uav_noise", &m.uav_noise}, {"wlan_noise", &m.wlan_noise}};
  for (const auto& [name, noise] : noises) {
    try {
      validate(*noise);
    } catch (const ValidationError& e) {
      throw ValidationError::nested(name, e);
    }
  }
  if (!(m.ue_distance_m > 0.0) || !std::isfinite(m.ue_distance_m)) {
    throw ValidationError("ue_distance_m", "must be > 0");
  }
  if (!std::isfinite(m.building_entry_loss_db)) throw ValidationError("building_entry_loss_db", "must be finite");
  if (!std::isfinite(m.rejection.adjacent_db) || !std::isfinite(m.rejection.next_adjacent_db)) {
    throw ValidationError("rejection", "must be finite");
  }
}

const char* to_string(Condition c) {
  switch (c) {
    case Condition::Uplink: return "uplink";
    case Condition::Downlink: return "downlink";
    case Condition::Terrestrial: return "terrestrial";
  }
  return "?";
}

namespace {

double loss(const LinkModels& m, LinkClass cls, const Position3D& a, const Position3D& b, bool& clamped) {
  const double d = distance(a, b);
  if (d == 0.0) throw GeometryError("coincident nodes: zero-length link");
  const PathLoss pl = path_loss(m.path_loss, cls, d);
  clamped = clamped || pl.clamped;
  return pl.db;
}

double uplink_impl(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                   const LinkModels& m, bool& clamped) {
  const double signal = *received_power(uav.tx_power_dbm, gain(uav.antenna, 0.0), gain(gs.antenna, 0.0),
                                        loss(m, LinkClass::AirToGround, uav.position, gs.position, clamped),
                                        Rejection::of(0.0));
  PowerSum interference;
  for (const RadioNode& r : routers) {
    const double theta = off_boresight_angle(gs.position, uav.position, r.position);
    const double l =
        loss(m, LinkClass::GroundToGround, gs.position, r.position, clamped) + m.building_entry_loss_db;
    interference.add(received_power(r.tx_power_dbm, gain(r.antenna, 0.0), gain(gs.antenna, theta), l,
                                    m.rejection(uav.channels.uplink, r.channel)));
  }
  return sinr_db(signal, interference.mw(), noise_power_dbm(m.gs_noise));
}

double downlink_impl(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                     const LinkModels& m, bool& clamped) {
  const double signal = *received_power(gs.tx_power_dbm, gain(gs.antenna, 0.0), gain(uav.antenna, 0.0),
                                        loss(m, LinkClass::AirToGround, uav.position, gs.position, clamped),
                                        Rejection::of(0.0));
  PowerSum interference;
  for (const RadioNode& r : routers) {
    const double theta = off_boresight_angle(uav.position, gs.position, r.position);
    const double l = loss(m, LinkClass::AirToGround, uav.position, r.position, clamped) + m.building_entry_loss_db;
    interference.add(received_power(r.tx_power_dbm, gain(r.antenna, 0.0), gain(uav.antenna, theta), l,
                                    m.rejection(uav.channels.downlink, r.channel)));
  }
  return sinr_db(signal, interference.mw(), noise_power_dbm(m.uav_noise));
}

double terrestrial_impl(const RadioNode& router, const RadioNode& uav, const RadioNode& gs, const LinkModels& m,
                        bool& clamped) {
  const PathLoss desired = path_loss(m.path_loss, LinkClass::GroundToGround, m.ue_distance_m);
  clamped = clamped || desired.clamped;
  const double signal =
      *received_power(router.tx_power_dbm, gain(router.antenna, 0.0), 0.0, desired.db, Rejection::of(0.0));

  PowerSum interference;
  const double theta_uav = off_boresight_angle(uav.position, gs.position, router.position);
  interference.add(received_power(
      uav.tx_power_dbm, gain(uav.antenna, theta_uav), gain(router.antenna, 0.0),
      loss(m, LinkClass::AirToGround, uav.position, router.position, clamped) + m.building_entry_loss_db,
      m.rejection(router.channel, uav.channels.uplink)));
  const double theta_gs = off_boresight_angle(gs.position, uav.position, router.position);
  interference.add(received_power(
      gs.tx_power_dbm, gain(gs.antenna, theta_gs), gain(router.antenna, 0.0),
      loss(m, LinkClass::GroundToGround, gs.position, router.position, clamped) + m.building_entry_loss_db,
      m.rejection(router.channel, uav.channels.downlink)));
  return sinr_db(signal, interference.mw(), noise_power_dbm(m.wlan_noise));
}

}  // namespace

double uplink_sinr(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                   const LinkModels& models) {
  bool clamped = false;
  return uplink_impl(uav, gs, routers, models, clamped);
}

double downlink_sinr(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                     const LinkModels& models) {
  bool clamped = false;
  return downlink_impl(uav, gs, routers, models, clamped);
}

double terrestrial_sinr(const RadioNode& router, const RadioNode& uav, const RadioNode& gs,
                        const LinkModels& models) {
  bool clamped = false;
  return terrestrial_impl(router, uav, gs, models, clamped);
}

LinkSinr evaluate_link(const RadioNode& uav, const RadioNode& gs, std::span<const RadioNode> routers,
                       const LinkModels& models) {
  LinkSinr out;
  out.uplink_db = uplink_impl(uav, gs, routers, models, out.clamped);
  out.downlink_db = downlink_impl(uav, gs, routers, models, out.clamped);
  out.terrestrial_db.reserve(routers.size());
  for (const RadioNode& r : routers) out.terrestrial_db.push_back(terrestrial_impl(r, uav, gs, models, out.clamped));
  return out;
}

LinkMargins margins(const LinkSinr& sinr, const SharingThresholds& t) {
  LinkMargins m;
  m.uplink_db = sinr.uplink_db - t.uplink_min_db;
  m.downlink_db = sinr.downlink_db - t.downlink_min_db;
  m.terrestrial_db.reserve(sinr.terrestrial_db.size());
  for (double s : sinr.terrestrial_db) m.terrestrial_db.push_back(s - t.terrestrial_min_db);
  return m;
}

ConditionResult evaluate_conditions(const LinkSinr& sinr, const SharingThresholds& thresholds) {
  const LinkMargins m = margins(sinr, thresholds);
  ConditionResult r;
  r.pass = m.uplink_db > 0.0 && m.downlink_db > 0.0;
  r.worst_margin_db = m.uplink_db;
  r.binding = Condition::Uplink;
  if (m.downlink_db < r.worst_margin_db) {
    r.worst_margin_db = m.downlink_db;
    r.binding = Condition::Downlink;
  }
  for (double t : m.terrestrial_db) {
    r.pass = r.pass && t > 0.0;
    if (t < r.worst_margin_db) {
      r.worst_margin_db = t;
      r.binding = Condition::Terrestrial;
    }
  }
  return r;
}

}  // namespace uavshare
