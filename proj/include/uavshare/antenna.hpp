#pragma once

namespace uavshare {

/// Rotationally symmetric gain pattern. Directional patterns use a parabolic
/// main lobe, 12 (theta / beamwidth)^2 dB of attenuation, flattened at
/// `sidelobe_floor_db` below peak.
struct AntennaPattern {
  enum class Kind { Directional, Omni };

  Kind kind = Kind::Omni;
  double peak_gain_dbi = 0.0;
  double beamwidth_deg = 360.0;
  double sidelobe_floor_db = 0.0;

  static AntennaPattern directional(double peak_gain_dbi, double beamwidth_deg, double sidelobe_floor_db) {
    return {Kind::Directional, peak_gain_dbi, beamwidth_deg, sidelobe_floor_db};
  }
  static AntennaPattern omni(double peak_gain_dbi = 0.0) { return {Kind::Omni, peak_gain_dbi, 360.0, 0.0}; }

  friend bool operator==(const AntennaPattern&, const AntennaPattern&) = default;
};

void validate(const AntennaPattern& pattern);

/// Gain in dBi at `theta_deg` off boresight. Throws ValidationError outside [0, 180].
double gain(const AntennaPattern& pattern, double theta_deg);

/// Attenuation below peak, without range checks. Used by the grid kernels.
inline double attenuation_db(const AntennaPattern& pattern, double theta_deg) {
  if (pattern.kind == AntennaPattern::Kind::Omni) return 0.0;
  const double r = theta_deg / pattern.beamwidth_deg;
  const double a = 12.0 * r * r;
  return a < pattern.sidelobe_floor_db ? a : pattern.sidelobe_floor_db;
}

inline double eirp(const AntennaPattern& pattern, double tx_power_dbm) {
  return tx_power_dbm + pattern.peak_gain_dbi;
}

}  // namespace uavshare
