#pragma once

// Straight-line scalar recomputation of the link budget. Reads only plain
// data from a Scenario and re-derives every formula locally; it must not call
// into the library's propagation, antenna or link code.

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavshare/scenario.hpp"

namespace oracle {

constexpr double kC = 299792458.0;
constexpr double kPi = 3.14159265358979323846;

inline double intercept_db(double f_mhz) { return 20.0 * std::log10(4.0 * kPi * f_mhz * 1e6 / kC); }

inline double loss_db(const uavshare::Scenario& s, double n, double d) {
  const auto& m = s.models.path_loss;
  d = std::max(d, m.reference_distance_m);
  return intercept_db(m.carrier_frequency_mhz) + 20.0 * std::log10(m.reference_distance_m) +
         10.0 * n * std::log10(d / m.reference_distance_m);
}

inline double dist(const uavshare::Position3D& a, const uavshare::Position3D& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

// Angle at `at` between the rays toward `target` and `other`, via acos.
inline double angle_deg(const uavshare::Position3D& at, const uavshare::Position3D& target,
                        const uavshare::Position3D& other) {
  const double ax = target.x - at.x, ay = target.y - at.y, az = target.z - at.z;
  const double bx = other.x - at.x, by = other.y - at.y, bz = other.z - at.z;
  const double c = (ax * bx + ay * by + az * bz) / (std::sqrt(ax * ax + ay * ay + az * az) *
                                                   std::sqrt(bx * bx + by * by + bz * bz));
  return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / kPi;
}

inline double gain_dbi(const uavshare::AntennaPattern& p, double theta) {
  if (p.kind == uavshare::AntennaPattern::Kind::Omni) return p.peak_gain_dbi;
  return p.peak_gain_dbi - std::min(12.0 * (theta / p.beamwidth_deg) * (theta / p.beamwidth_deg),
                                    p.sidelobe_floor_db);
}

// Rejection in dB; +inf means the interferer is dropped entirely.
inline double rejection_db(const uavshare::Scenario& s, int a, int b) {
  switch (std::abs(a - b)) {
    case 0: return 0.0;
    case 1: return s.models.rejection.adjacent_db;
    case 2: return s.models.rejection.next_adjacent_db;
    default: return std::numeric_limits<double>::infinity();
  }
}

inline double noise_dbm(const uavshare::NoiseModel& n) {
  return -174.0 + 10.0 * std::log10(n.bandwidth_hz) + n.noise_figure_db;
}

inline double mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

struct Sinr {
  double uplink = 0.0;
  double downlink = 0.0;
  double terrestrial_min = std::numeric_limits<double>::infinity();
  bool pass = false;
};

// SINRs for UAV `uav_index` at `uav` talking to a GS at `gs` on `channels`.
inline Sinr evaluate(const uavshare::Scenario& s, const uavshare::Position3D& uav, const uavshare::Position3D& gs,
                     uavshare::ChannelPair channels, std::size_t uav_index = 0) {
  const auto& u = s.uavs[uav_index];
  const auto& g = s.ground_station;
  const double n_air = s.models.path_loss.exponent_air;
  const double n_gnd = s.models.path_loss.exponent_ground;
  const double bel = s.models.building_entry_loss_db;
  const double link = loss_db(s, n_air, dist(uav, gs));
  const int up = channels.uplink.index;
  const int down = channels.downlink.index;

  double i_up = 0.0, i_down = 0.0;
  Sinr out;
  for (const auto& r : s.routers) {
    const int ch = r.channel.index;
    const double rej_up = rejection_db(s, up, ch);
    if (std::isfinite(rej_up)) {
      i_up += mw(r.tx_power_dbm + gain_dbi(g.antenna, angle_deg(gs, uav, r.position)) -
                 loss_db(s, n_gnd, dist(gs, r.position)) - bel - rej_up);
    }
    const double rej_down = rejection_db(s, down, ch);
    if (std::isfinite(rej_down)) {
      i_down += mw(r.tx_power_dbm + gain_dbi(u.antenna, angle_deg(uav, gs, r.position)) -
                   loss_db(s, n_air, dist(uav, r.position)) - bel - rej_down);
    }
    const double signal = r.tx_power_dbm - loss_db(s, n_gnd, s.models.ue_distance_m);
    double i_t = 0.0;
    const double rej_u = rejection_db(s, ch, up);
    if (std::isfinite(rej_u)) {
      i_t += mw(u.tx_power_dbm + gain_dbi(u.antenna, angle_deg(uav, gs, r.position)) -
                loss_db(s, n_air, dist(uav, r.position)) - bel - rej_u);
    }
    const double rej_g = rejection_db(s, ch, down);
    if (std::isfinite(rej_g)) {
      i_t += mw(g.tx_power_dbm + gain_dbi(g.antenna, angle_deg(gs, uav, r.position)) -
                loss_db(s, n_gnd, dist(gs, r.position)) - bel - rej_g);
    }
    out.terrestrial_min =
        std::min(out.terrestrial_min, signal - 10.0 * std::log10(i_t + mw(noise_dbm(s.models.wlan_noise))));
  }
  out.uplink = u.tx_power_dbm + u.antenna.peak_gain_dbi + g.antenna.peak_gain_dbi - link -
               10.0 * std::log10(i_up + mw(noise_dbm(s.models.gs_noise)));
  out.downlink = g.tx_power_dbm + g.antenna.peak_gain_dbi + u.antenna.peak_gain_dbi - link -
                 10.0 * std::log10(i_down + mw(noise_dbm(s.models.uav_noise)));
  out.pass = out.uplink > s.thresholds.uplink_min_db && out.downlink > s.thresholds.downlink_min_db &&
             out.terrestrial_min > s.thresholds.terrestrial_min_db;
  return out;
}

}  // namespace oracle
