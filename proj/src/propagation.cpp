#include "uavshare/propagation.hpp"

#include <cmath>

#include "uavshare/error.hpp"

namespace uavshare {

namespace {
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kPi = 3.14159265358979323846;
}  // namespace

double free_space_loss_db(double frequency_mhz, double distance_m) {
  return 20.0 * std::log10(4.0 * kPi * distance_m * frequency_mhz * 1e6 / kSpeedOfLight);
}

PathLossModel PathLossModel::make(double carrier_frequency_mhz, double reference_distance_m, double exponent_air,
                                  double exponent_ground) {
  PathLossModel m;
  m.carrier_frequency_mhz = carrier_frequency_mhz;
  m.reference_distance_m = reference_distance_m;
  m.reference_loss_db = free_space_loss_db(carrier_frequency_mhz, reference_distance_m);
  m.exponent_air = exponent_air;
  m.exponent_ground = exponent_ground;
  return m;
}

void validate(const PathLossModel& m) {
  if (!(m.carrier_frequency_mhz > 0.0) || !std::isfinite(m.carrier_frequency_mhz)) {
    throw ValidationError("carrier_frequency_mhz", "must be > 0");
  }
  if (!(m.reference_distance_m > 0.0) || !std::isfinite(m.reference_distance_m)) {
    throw ValidationError("reference_distance_m", "must be > 0");
  }
  if (!(m.exponent_air > 0.0) || !std::isfinite(m.exponent_air)) {
    throw ValidationError("exponent_air", "must be > 0");
  }
  if (!(m.exponent_ground > 0.0) || !std::isfinite(m.exponent_ground)) {
    throw ValidationError("exponent_ground", "must be > 0");
  }
  const double expected = free_space_loss_db(m.carrier_frequency_mhz, m.reference_distance_m);
  if (!(std::abs(m.reference_loss_db - expected) <= 0.01)) {
    throw ValidationError("reference_loss_db", "must equal free-space loss at the reference distance (" +
                                                   std::to_string(expected) + " dB)");
  }
}

PathLoss path_loss(const PathLossModel& model, LinkClass link_class, double distance_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw ValidationError("distance", "path length must be finite and > 0");
  }
  PathLoss out;
  double d = distance_m;
  if (d < model.reference_distance_m) {
    d = model.reference_distance_m;
    out.clamped = true;
  }
  const double n = link_class == LinkClass::AirToGround ? model.exponent_air : model.exponent_ground;
  out.db = model.reference_loss_db + 10.0 * n * std::log10(d / model.reference_distance_m);
  return out;
}

void validate(const NoiseModel& noise) {
  if (!(noise.bandwidth_hz > 0.0) || !std::isfinite(noise.bandwidth_hz)) {
    throw ValidationError("bandwidth_hz", "must be > 0");
  }
  if (!(noise.noise_figure_db >= 0.0) || !std::isfinite(noise.noise_figure_db)) {
    throw ValidationError("noise_figure_db", "must be >= 0");
  }
}

}  // namespace uavshare
