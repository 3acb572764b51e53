#include "uavshare/geometry.hpp"

#include <cmath>

#include "uavshare/error.hpp"

namespace uavshare {

void validate(const Position3D& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
    throw ValidationError("position coordinates must be finite");
  }
  if (p.z < 0.0) throw ValidationError("z", "height must be >= 0");
}

void validate(const AreaBounds& b) {
  if (!std::isfinite(b.x_min) || !std::isfinite(b.x_max) || !std::isfinite(b.y_min) || !std::isfinite(b.y_max)) {
    throw ValidationError("bounds must be finite");
  }
  if (!(b.x_min < b.x_max)) throw ValidationError("x_max", "x_min must be < x_max");
  if (!(b.y_min < b.y_max)) throw ValidationError("y_max", "y_min must be < y_max");
}

double off_boresight_angle(const Position3D& antenna, const Position3D& boresight_target,
                           const Position3D& other) {
  const Vec3 boresight = boresight_target - antenna;
  const Vec3 toward = other - antenna;
  if (norm(boresight) == 0.0) throw GeometryError("boresight target coincides with antenna");
  if (norm(toward) == 0.0) throw GeometryError("evaluated point coincides with antenna");
  return angle_between_deg(boresight, toward);
}

}  // namespace uavshare
