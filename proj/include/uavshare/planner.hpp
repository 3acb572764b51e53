#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uavshare/coverage.hpp"

namespace uavshare {

struct PlacementCandidate {
  Position3D position;
  double ratio = 0.0;
  std::size_t pass_count = 0;
};

struct PlacementResult {
  Position3D best_position;
  double best_ratio = 0.0;
  /// Spacing of the horizontal candidate lattice.
  double candidate_resolution_m = 0.0;
  std::vector<PlacementCandidate> candidates;
};

/// Candidate GS positions: a lattice anchored at the area center with the
/// given spacing, clipped to the bounds, at the configured GS height. Ordered
/// by (y, x).
std::vector<Position3D> gs_candidates(const Scenario& scenario, double candidate_resolution_m);

/// Exhaustive search over gs_candidates(). Ties go to the candidate closest
/// to the area center, then to the lexicographically smallest (x, y).
PlacementResult optimize_gs(const Scenario& scenario, double candidate_resolution_m, const GridSpec& grid,
                            int threads = 0);

enum class PartitionStrategy { Strips, Sectors };

const char* to_string(PartitionStrategy s);

/// One UAV's share of the target area. Membership is decided by `contains`;
/// `polygon` is the same region as a vertex list for export and for
/// flyable_ratio_within().
struct SubArea {
  enum class Shape { Rectangle, Sector };

  int index = 0;
  Shape shape = Shape::Rectangle;
  Polygon polygon;
  /// Rectangle: [x0, x1) x [y0, y1), closed on the bounds' max edges.
  AreaBounds rect;
  bool closed_x_max = true;
  /// Sector: polar angle about `center` in [angle_begin, angle_end), radians in [0, 2 pi].
  Point2D center;
  double angle_begin = 0.0;
  double angle_end = 0.0;

  ChannelId assigned_uplink;
  ChannelId assigned_downlink;
  /// Flyable fraction of this sub-area with the assigned pair.
  double ratio = 0.0;
  std::size_t point_count = 0;
  /// No channel pair made any point of this sub-area flyable.
  bool infeasible = false;

  bool contains(double x, double y) const;
};

/// Splits `bounds` into `n` equal-area sub-areas. Strips are vertical and of
/// equal width. Sectors sweep polar angle about `gs` so that each holds the
/// same number of `grid` cells (within one cell). Throws ValidationError if
/// n < 1 or n exceeds the cell count.
std::vector<SubArea> partition_area(const AreaBounds& bounds, int n, PartitionStrategy strategy,
                                    const Position3D& gs, const GridSpec& grid);

struct AllocationPlan {
  Position3D gs_position;
  std::vector<SubArea> sub_areas;
  FlyableGrid combined_grid;
  double combined_ratio = 0.0;
  /// Some sub-area had no feasible channel pair; its best-scoring pair is kept.
  bool warning = false;
};

/// Per sub-area, scores every ordered (uplink, downlink) pair with
/// uplink != downlink by the pass count inside that sub-area, evaluated
/// against every router of the scenario. Ties prefer the larger minimum
/// channel offset to routers inside the sub-area, then the lowest indices.
AllocationPlan allocate_channels(const Scenario& scenario, std::vector<SubArea> sub_areas, const GridSpec& grid,
                                 const Position3D& gs_position, int threads = 0);

struct UniformPairResult {
  ChannelPair channels;
  double ratio = 0.0;
  std::size_t pass_count = 0;
};

/// The single channel pair that maximizes the whole-area flyable ratio
/// (lowest indices on ties).
UniformPairResult best_uniform_pair(const Scenario& scenario, const GridSpec& grid, const Position3D& gs_position,
                                    int threads = 0);

struct ChannelConflict {
  int sub_area_a = 0;
  int sub_area_b = 0;
  Condition direction = Condition::Uplink;  // Uplink or Downlink
  ChannelId channel;
};

/// Pairs of sub-areas that reuse the same channel in the same direction.
/// Reporting only; UAV-to-UAV interference is not modelled.
std::vector<ChannelConflict> cross_subarea_channel_check(const AllocationPlan& plan);

}  // namespace uavshare
