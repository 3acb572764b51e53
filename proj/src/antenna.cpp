#include "uavshare/antenna.hpp"

#include <cmath>

#include "uavshare/error.hpp"

namespace uavshare {

void validate(const AntennaPattern& p) {
  if (!std::isfinite(p.peak_gain_dbi)) throw ValidationError("peak_gain_dbi", "must be finite");
  if (p.kind == AntennaPattern::Kind::Omni) return;
  if (!(p.beamwidth_deg > 0.0 && p.beamwidth_deg <= 180.0)) {
    throw ValidationError("beamwidth_deg", "must be in (0, 180]");
  }
  if (!(p.sidelobe_floor_db > 0.0) || !std::isfinite(p.sidelobe_floor_db)) {
    throw ValidationError("sidelobe_floor_db", "must be > 0");
  }
}

double gain(const AntennaPattern& pattern, double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0)) {
    throw ValidationError("theta", "off-boresight angle must be in [0, 180] degrees");
  }
  return pattern.peak_gain_dbi - attenuation_db(pattern, theta_deg);
}

}  // namespace uavshare
