#pragma once

#include <cmath>

namespace uavshare {

/// Flat-earth Cartesian position in meters: x east, y north, z above ground.
struct Position3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Position3D&, const Position3D&) = default;
};

/// Horizontal rectangle of the target area.
struct AreaBounds {
  double x_min = 0.0;
  double x_max = 1000.0;
  double y_min = 0.0;
  double y_max = 1000.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double center_x() const { return 0.5 * (x_min + x_max); }
  double center_y() const { return 0.5 * (y_min + y_max); }
  bool contains_horizontal(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }

  friend bool operator==(const AreaBounds&, const AreaBounds&) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator-(const Position3D& to, const Position3D& from) {
  return {to.x - from.x, to.y - from.y, to.z - from.z};
}

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Angle between two non-zero vectors in degrees. atan2 of |a x b| and a.b
/// keeps full precision near 0 and 180.
inline double angle_between_deg(const Vec3& a, const Vec3& b) {
  const double cx = a.y * b.z - a.z * b.y;
  const double cy = a.z * b.x - a.x * b.z;
  const double cz = a.x * b.y - a.y * b.x;
  return std::atan2(std::sqrt(cx * cx + cy * cy + cz * cz), dot(a, b)) * (180.0 / 3.14159265358979323846);
}

/// Throws ValidationError unless coordinates are finite and z >= 0.
void validate(const Position3D& p);
/// Throws ValidationError unless x_min < x_max and y_min < y_max (all finite).
void validate(const AreaBounds& b);

inline double distance(const Position3D& a, const Position3D& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double dz = b.z - a.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

inline double horizontal_distance(const Position3D& a, const Position3D& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

/// Angle in degrees, in [0, 180], between the direction antenna->boresight_target
/// and the direction antenna->other. Throws GeometryError if either direction
/// has zero length.
double off_boresight_angle(const Position3D& antenna, const Position3D& boresight_target,
                           const Position3D& other);

constexpr double kPi = 3.14159265358979323846;

inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }
inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }

}  // namespace uavshare
