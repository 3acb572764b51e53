#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uavshare/scenario.hpp"

namespace uavshare {

/// Horizontal evaluation lattice at a fixed UAV altitude. Points sit at cell
/// centers; there are ceil(width / resolution) x ceil(height / resolution)
/// cells, each of size width/nx by height/ny so the cells tile the bounds.
struct GridSpec {
  AreaBounds bounds;
  double resolution_m = 10.0;
  double altitude_m = 30.0;

  int nx() const;
  int ny() const;
  std::size_t size() const { return static_cast<std::size_t>(nx()) * static_cast<std::size_t>(ny()); }
  double step_x() const { return bounds.width() / nx(); }
  double step_y() const { return bounds.height() / ny(); }
  /// Row-major index: j * nx + i, j counting north from y_min.
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx() + i; }
  Position3D point(int i, int j) const {
    return {bounds.x_min + (i + 0.5) * step_x(), bounds.y_min + (j + 0.5) * step_y(), altitude_m};
  }
  Position3D point(std::size_t k) const {
    const int n = nx();
    return point(static_cast<int>(k % n), static_cast<int>(k / n));
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

void validate(const GridSpec& grid);

GridSpec default_grid(const Scenario& scenario);

struct PointResult {
  double uplink_sinr_db = 0.0;
  double downlink_sinr_db = 0.0;
  /// Minimum over routers; +inf without routers.
  double terrestrial_sinr_db = 0.0;
  double worst_margin_db = 0.0;
  Condition binding = Condition::Uplink;
  bool pass = false;
  bool clamped = false;
};

struct FlyableGrid {
  GridSpec spec;
  Position3D gs_position;
  ChannelPair channels;
  std::vector<PointResult> points;
  std::size_t pass_count = 0;
  double flyable_ratio = 0.0;
  bool any_clamped = false;

  const PointResult& at(int i, int j) const { return points[spec.index(i, j)]; }
};

/// Evaluates the sharing conditions for one GS position and channel pair at
/// arbitrary UAV positions. Router-dependent terms that do not move with the
/// UAV are computed once at construction.
class GridKernel {
 public:
  GridKernel(const Scenario& scenario, const Position3D& gs_position, ChannelPair channels,
             std::size_t uav_index = 0);

  PointResult evaluate(const Position3D& uav) const;

 private:
  struct RouterTerms {
    Position3D position;
    Vec3 from_gs;           // GS -> router
    double from_gs_norm;
    double gs_path_loss_db;  // GS <-> router, ground exponent, incl. entry loss
    bool gs_clamped;
    // Interference power before antenna gains and air path loss.
    bool uplink_rejected;    // router -> GS on the uplink channel
    double to_gs_dbm;        // includes ground path loss
    bool downlink_rejected;  // router -> UAV on the downlink channel
    double to_uav_base_dbm;
    bool from_uav_rejected;  // UAV uplink -> router
    double from_uav_base_dbm;
    bool from_gs_rejected;   // GS downlink -> router
    double from_gs_dbm_minus_gain;
    double signal_dbm;
    double noise_mw;
  };

  // Gain lookup that only takes the atan2 inside the main lobe.
  struct FastPattern {
    AntennaPattern pattern;
    bool omni = true;
    double cos_floor = -2.0;  // cos of the angle where the floor starts

    explicit FastPattern(const AntennaPattern& p);
    double gain(const Vec3& boresight, double boresight_norm, const Vec3& toward, double toward_norm) const;
  };

  const Scenario* scenario_;
  Position3D gs_;
  double uav_tx_dbm_;
  FastPattern uav_antenna_;
  double gs_tx_dbm_;
  FastPattern gs_antenna_;
  double uplink_noise_mw_;
  double downlink_noise_mw_;
  std::vector<RouterTerms> routers_;
};

/// OpenMP-parallel over grid points. `threads` caps the team size (0 = runtime
/// default). The result is identical to the serial reference for any thread count.
FlyableGrid compute_flyable_grid(const Scenario& scenario, const Position3D& gs_position,
                                 const GridSpec& grid, int threads = 0);
FlyableGrid compute_flyable_grid(const Scenario& scenario, const Position3D& gs_position,
                                 const GridSpec& grid, ChannelPair channels, int threads = 0);

/// Single-threaded reference implementation.
FlyableGrid compute_flyable_grid_serial(const Scenario& scenario, const Position3D& gs_position,
                                        const GridSpec& grid, ChannelPair channels);

/// Number of passing points only; skips storing per-point records.
std::size_t count_flyable(const GridKernel& kernel, const GridSpec& grid);

struct Point2D {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2D&, const Point2D&) = default;
};

using Polygon = std::vector<Point2D>;

/// Even-odd crossing test. Points on a left or bottom edge count as inside,
/// on a right or top edge as outside, so polygons sharing an edge never both
/// claim a point.
bool point_in_polygon(std::span<const Point2D> polygon, double x, double y);

Polygon rectangle(const AreaBounds& b);

/// Pass fraction among cell centers inside `region`. Throws ValidationError
/// if no cell center falls inside.
double flyable_ratio_within(const FlyableGrid& grid, std::span<const Point2D> region);

}  // namespace uavshare
