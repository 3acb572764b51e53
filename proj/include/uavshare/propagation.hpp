#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>

namespace uavshare {

/// Log-distance path loss with a free-space intercept at the reference distance.
/// Air-to-ground links use `exponent_air`, ground-to-ground links `exponent_ground`.
struct PathLossModel {
  double carrier_frequency_mhz = 5700.0;
  double reference_distance_m = 1.0;
  double reference_loss_db = 0.0;
  double exponent_air = 2.0;
  double exponent_ground = 4.0;

  /// Builds a model whose reference loss is the free-space loss at the
  /// reference distance and carrier frequency.
  static PathLossModel make(double carrier_frequency_mhz = 5700.0, double reference_distance_m = 1.0,
                            double exponent_air = 2.0, double exponent_ground = 4.0);

  friend bool operator==(const PathLossModel&, const PathLossModel&) = default;
};

/// Throws ValidationError if an invariant is broken, including a reference
/// loss that is more than 0.01 dB away from free-space loss.
void validate(const PathLossModel& model);

enum class LinkClass { AirToGround, GroundToGround };

/// 20 log10(4 pi d f / c).
double free_space_loss_db(double frequency_mhz, double distance_m);

struct PathLoss {
  double db = 0.0;
  /// Distance was below the reference distance and has been clamped to it.
  bool clamped = false;
};

/// Throws ValidationError if d <= 0 or is not finite.
PathLoss path_loss(const PathLossModel& model, LinkClass link_class, double distance_m);

/// 10 MHz channel raster from 5650 to 5750 MHz.
struct ChannelId {
  static constexpr int kCount = 10;
  static constexpr double kFirstCenterMhz = 5655.0;
  static constexpr double kSpacingMhz = 10.0;
  static constexpr double kWlanLowMhz = 5650.0;
  static constexpr double kWlanHighMhz = 5730.0;

  int index = 0;

  double center_mhz() const { return kFirstCenterMhz + kSpacingMhz * index; }
  double low_edge_mhz() const { return center_mhz() - 0.5 * kSpacingMhz; }
  double high_edge_mhz() const { return center_mhz() + 0.5 * kSpacingMhz; }
  bool on_raster() const { return index >= 0 && index < kCount; }
  /// True iff the channel lies inside the band shared with WLAN.
  bool overlaps_wlan() const {
    return low_edge_mhz() >= kWlanLowMhz && high_edge_mhz() <= kWlanHighMhz;
  }

  friend auto operator<=>(const ChannelId&, const ChannelId&) = default;
};

struct NoiseModel {
  static constexpr double kThermalDensityDbmPerHz = -174.0;

  double noise_figure_db = 6.0;
  double bandwidth_hz = 10e6;

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

void validate(const NoiseModel& noise);

inline double noise_power_dbm(const NoiseModel& noise) {
  return NoiseModel::kThermalDensityDbmPerHz + 10.0 * std::log10(noise.bandwidth_hz) +
         noise.noise_figure_db;
}

/// Attenuation applied to an interferer by the victim's channel filter.
/// A total rejection removes the interferer from the power sum entirely.
class Rejection {
 public:
  static constexpr Rejection total() { return Rejection(true, 0.0); }
  static constexpr Rejection of(double db) { return Rejection(false, db); }

  constexpr bool is_total() const { return total_; }
  constexpr double db() const { return db_; }

  friend constexpr bool operator==(const Rejection&, const Rejection&) = default;

 private:
  constexpr Rejection(bool total, double db) : total_(total), db_(db) {}
  bool total_;
  double db_;
};

/// Rejection by channel offset: 0 -> co-channel, 1 -> adjacent, 2 -> next
/// adjacent, anything further -> total.
struct RejectionTable {
  double adjacent_db = 16.0;
  double next_adjacent_db = 32.0;

  Rejection operator()(ChannelId victim, ChannelId interferer) const {
    const int offset = std::abs(victim.index - interferer.index);
    switch (offset) {
      case 0: return Rejection::of(0.0);
      case 1: return Rejection::of(adjacent_db);
      case 2: return Rejection::of(next_adjacent_db);
      default: return Rejection::total();
    }
  }

  friend bool operator==(const RejectionTable&, const RejectionTable&) = default;
};

inline Rejection channel_rejection(ChannelId victim, ChannelId interferer) {
  return RejectionTable{}(victim, interferer);
}

/// Received power in dBm, or nullopt when the interferer is fully rejected.
inline std::optional<double> received_power(double tx_power_dbm, double tx_gain_dbi, double rx_gain_dbi,
                                            double loss_db, Rejection rejection) {
  if (rejection.is_total()) return std::nullopt;
  return tx_power_dbm + tx_gain_dbi + rx_gain_dbi - loss_db - rejection.db();
}

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) {
  return mw > 0.0 ? 10.0 * std::log10(mw) : -std::numeric_limits<double>::infinity();
}

/// Linear (milliwatt) accumulator for interference terms.
class PowerSum {
 public:
  void add(std::optional<double> dbm) {
    if (dbm) mw_ += dbm_to_mw(*dbm);
  }
  void add_mw(double mw) { mw_ += mw; }
  double mw() const { return mw_; }
  /// -inf when nothing was added.
  double dbm() const { return mw_to_dbm(mw_); }

 private:
  double mw_ = 0.0;
};

/// signal_dbm - 10 log10(interference_mw + noise_mw).
inline double sinr_db(double signal_dbm, double interference_mw, double noise_dbm) {
  return signal_dbm - 10.0 * std::log10(interference_mw + dbm_to_mw(noise_dbm));
}

}  // namespace uavshare
