#include "uavshare/planner.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>
#include <tuple>

#include "uavshare/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uavshare {

namespace {

int team_size(int threads) {
#ifdef _OPENMP
  return threads > 0 ? threads : omp_get_max_threads();
#else
  (void)threads;
  return 1;
#endif
}

constexpr double kTwoPi = 2.0 * kPi;

double polar_angle(double dx, double dy) {
  double a = std::atan2(dy, dx);
  if (a < 0.0) a += kTwoPi;
  // atan2 can round a tiny negative angle up to exactly 2 pi.
  if (a >= kTwoPi) a = 0.0;
  return a;
}

std::vector<ChannelPair> all_pairs(int channel_count) {
  std::vector<ChannelPair> pairs;
  for (int u = 0; u < channel_count; ++u) {
    for (int d = 0; d < channel_count; ++d) {
      if (u != d) pairs.push_back({ChannelId{u}, ChannelId{d}});
    }
  }
  return pairs;
}

}  // namespace

std::vector<Position3D> gs_candidates(const Scenario& scenario, double res) {
  if (!(res > 0.0) || !std::isfinite(res)) throw ValidationError("candidate_resolution_m", "must be > 0");
  const AreaBounds& b = scenario.bounds;
  const double cx = b.center_x();
  const double cy = b.center_y();
  const double z = scenario.ground_station.position.z;
  const auto k_lo = [res](double span) { return -static_cast<long>(std::floor(span / res + 1e-9)); };
  const auto k_hi = [res](double span) { return static_cast<long>(std::floor(span / res + 1e-9)); };
  std::vector<Position3D> out;
  for (long ky = k_lo(cy - b.y_min); ky <= k_hi(b.y_max - cy); ++ky) {
    for (long kx = k_lo(cx - b.x_min); kx <= k_hi(b.x_max - cx); ++kx) {
      const double x = std::clamp(cx + static_cast<double>(kx) * res, b.x_min, b.x_max);
      const double y = std::clamp(cy + static_cast<double>(ky) * res, b.y_min, b.y_max);
      out.push_back({x, y, z});
    }
  }
  return out;
}

PlacementResult optimize_gs(const Scenario& scenario, double candidate_resolution_m, const GridSpec& grid,
                            int threads) {
  validate(grid);
  PlacementResult result;
  result.candidate_resolution_m = candidate_resolution_m;
  const std::vector<Position3D> positions = gs_candidates(scenario, candidate_resolution_m);
  result.candidates.resize(positions.size());
  const ChannelPair channels = scenario.uavs.at(0).channels;
  const double total = static_cast<double>(grid.size());

  const auto n = static_cast<std::ptrdiff_t>(positions.size());
  [[maybe_unused]] const int team = team_size(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::ptrdiff_t c = 0; c < n; ++c) {
    const auto k = static_cast<std::size_t>(c);
    const GridKernel kernel(scenario, positions[k], channels);
    PlacementCandidate& out = result.candidates[k];
    out.position = positions[k];
    out.pass_count = count_flyable(kernel, grid);
    out.ratio = static_cast<double>(out.pass_count) / total;
  }

  const double cx = scenario.bounds.center_x();
  const double cy = scenario.bounds.center_y();
  const auto key = [&](const PlacementCandidate& c) {
    return std::make_tuple(-static_cast<long long>(c.pass_count), std::hypot(c.position.x - cx, c.position.y - cy),
                           c.position.x, c.position.y);
  };
  const PlacementCandidate* best = nullptr;
  for (const PlacementCandidate& c : result.candidates) {
    if (best == nullptr || key(c) < key(*best)) best = &c;
  }
  result.best_position = best->position;
  result.best_ratio = best->ratio;
  return result;
}

const char* to_string(PartitionStrategy s) { return s == PartitionStrategy::Strips ? "strips" : "sectors"; }

bool SubArea::contains(double x, double y) const {
  if (shape == Shape::Rectangle) {
    const bool in_x = x >= rect.x_min && (x < rect.x_max || (closed_x_max && x == rect.x_max));
    return in_x && y >= rect.y_min && y <= rect.y_max;
  }
  const double a = polar_angle(x - center.x, y - center.y);
  return a >= angle_begin && a < angle_end;
}

namespace {

Point2D ray_exit(const AreaBounds& b, Point2D c, double angle) {
  const double dx = std::cos(angle);
  const double dy = std::sin(angle);
  double t = std::numeric_limits<double>::infinity();
  if (dx > 1e-15) t = std::min(t, (b.x_max - c.x) / dx);
  if (dx < -1e-15) t = std::min(t, (b.x_min - c.x) / dx);
  if (dy > 1e-15) t = std::min(t, (b.y_max - c.y) / dy);
  if (dy < -1e-15) t = std::min(t, (b.y_min - c.y) / dy);
  return {std::clamp(c.x + t * dx, b.x_min, b.x_max), std::clamp(c.y + t * dy, b.y_min, b.y_max)};
}

Polygon sector_polygon(const AreaBounds& b, Point2D c, double begin, double end) {
  Polygon poly{c, ray_exit(b, c, begin)};
  std::vector<std::pair<double, Point2D>> corners;
  for (const Point2D& corner : rectangle(b)) {
    if (corner == c) continue;
    const double a = polar_angle(corner.x - c.x, corner.y - c.y);
    if (a > begin && a < end) corners.emplace_back(a, corner);
  }
  std::sort(corners.begin(), corners.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
  for (const auto& [a, corner] : corners) poly.push_back(corner);
  poly.push_back(ray_exit(b, c, end));
  return poly;
}

}  // namespace

std::vector<SubArea> partition_area(const AreaBounds& bounds, int n, PartitionStrategy strategy,
                                    const Position3D& gs, const GridSpec& grid) {
  validate(bounds);
  if (n < 1) throw ValidationError("uavs", "need at least one sub-area");
  const std::size_t cells = grid.size();
  if (static_cast<std::size_t>(n) > cells) {
    throw ValidationError("uavs", std::to_string(n) + " sub-areas exceed the " + std::to_string(cells) + " grid cells");
  }

  std::vector<SubArea> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0].rect = bounds;
    out[0].polygon = rectangle(bounds);
    return out;
  }

  if (strategy == PartitionStrategy::Strips) {
    if (n > grid.nx()) {
      throw ValidationError("uavs", std::to_string(n) + " strips exceed the " + std::to_string(grid.nx()) +
                                        " grid columns");
    }
    const double w = bounds.width() / n;
    for (int k = 0; k < n; ++k) {
      SubArea& s = out[static_cast<std::size_t>(k)];
      s.index = k;
      s.rect = bounds;
      s.rect.x_min = bounds.x_min + k * w;
      s.rect.x_max = k == n - 1 ? bounds.x_max : bounds.x_min + (k + 1) * w;
      s.closed_x_max = k == n - 1;
      s.polygon = rectangle(s.rect);
    }
    return out;
  }

  // Sectors: sweep cells by polar angle about the GS and cut into equal counts.
  std::vector<double> angles(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const Position3D p = grid.point(k);
    angles[k] = polar_angle(p.x - gs.x, p.y - gs.y);
  }
  std::sort(angles.begin(), angles.end());

  std::vector<double> cuts{0.0};
  std::size_t pos = 0;
  const std::size_t base = cells / static_cast<std::size_t>(n);
  const std::size_t extra = cells % static_cast<std::size_t>(n);
  for (int k = 0; k + 1 < n; ++k) {
    pos += base + (static_cast<std::size_t>(k) < extra ? 1 : 0);
    // Never split cells that share an angle.
    while (pos < cells && angles[pos] == angles[pos - 1]) ++pos;
    if (pos >= cells) throw ValidationError("uavs", "cannot split collinear cells into equal sectors");
    cuts.push_back(0.5 * (angles[pos - 1] + angles[pos]));
  }
  cuts.push_back(kTwoPi);

  const Point2D c{gs.x, gs.y};
  for (int k = 0; k < n; ++k) {
    SubArea& s = out[static_cast<std::size_t>(k)];
    s.index = k;
    s.shape = SubArea::Shape::Sector;
    s.center = c;
    s.angle_begin = cuts[static_cast<std::size_t>(k)];
    s.angle_end = cuts[static_cast<std::size_t>(k) + 1];
    s.rect = bounds;
    s.polygon = sector_polygon(bounds, c, s.angle_begin, s.angle_end);
  }
  return out;
}

AllocationPlan allocate_channels(const Scenario& scenario, std::vector<SubArea> sub_areas, const GridSpec& grid,
                                 const Position3D& gs_position, int threads) {
  validate(grid);
  if (scenario.channel_count < 2) throw ValidationError("$.channel_count", "need at least two channels");
  if (sub_areas.empty()) throw ValidationError("sub_areas", "need at least one sub-area");

  const std::size_t cells = grid.size();
  std::vector<int> owner(cells, -1);
  std::vector<std::vector<std::size_t>> members(sub_areas.size());
  for (std::size_t k = 0; k < cells; ++k) {
    const Position3D p = grid.point(k);
    for (std::size_t s = 0; s < sub_areas.size(); ++s) {
      if (sub_areas[s].contains(p.x, p.y)) {
        owner[k] = static_cast<int>(s);
        members[s].push_back(k);
        break;
      }
    }
    if (owner[k] < 0) throw ValidationError("sub_areas", "sub-areas do not cover every grid point");
  }

  const std::vector<ChannelPair> pairs = all_pairs(scenario.channel_count);
  const std::size_t n_sub = sub_areas.size();
  const std::size_t n_pairs = pairs.size();
  const auto uav_for = [&](std::size_t s) { return s < scenario.uavs.size() ? s : std::size_t{0}; };

  // scores[s * n_pairs + p] = pass count of pair p inside sub-area s.
  std::vector<std::size_t> scores(n_sub * n_pairs, 0);
  const auto jobs = static_cast<std::ptrdiff_t>(n_sub * n_pairs);
  [[maybe_unused]] const int team = team_size(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::ptrdiff_t job = 0; job < jobs; ++job) {
    const auto s = static_cast<std::size_t>(job) / n_pairs;
    const auto p = static_cast<std::size_t>(job) % n_pairs;
    const GridKernel kernel(scenario, gs_position, pairs[p], uav_for(s));
    std::size_t count = 0;
    for (std::size_t k : members[s]) count += kernel.evaluate(grid.point(k)).pass ? 1 : 0;
    scores[static_cast<std::size_t>(job)] = count;
  }

  AllocationPlan plan;
  plan.gs_position = gs_position;
  for (std::size_t s = 0; s < n_sub; ++s) {
    SubArea& area = sub_areas[s];
    std::vector<int> local_channels;
    for (const RadioNode& r : scenario.routers) {
      if (area.contains(r.position.x, r.position.y)) local_channels.push_back(r.channel.index);
    }
    const auto min_offset = [&](const ChannelPair& pr) {
      int m = INT_MAX;
      for (int ch : local_channels) {
        m = std::min({m, std::abs(pr.uplink.index - ch), std::abs(pr.downlink.index - ch)});
      }
      return m;
    };
    std::size_t best = 0;
    for (std::size_t p = 1; p < n_pairs; ++p) {
      const std::size_t a = scores[s * n_pairs + p];
      const std::size_t b = scores[s * n_pairs + best];
      if (a > b || (a == b && min_offset(pairs[p]) > min_offset(pairs[best]))) best = p;
    }
    area.index = static_cast<int>(s);
    area.assigned_uplink = pairs[best].uplink;
    area.assigned_downlink = pairs[best].downlink;
    area.point_count = members[s].size();
    const std::size_t passing = scores[s * n_pairs + best];
    area.ratio = members[s].empty() ? 0.0 : static_cast<double>(passing) / static_cast<double>(members[s].size());
    area.infeasible = !members[s].empty() && passing == 0;
    plan.warning = plan.warning || area.infeasible;
  }

  FlyableGrid& g = plan.combined_grid;
  g.spec = grid;
  g.gs_position = gs_position;
  g.channels = {sub_areas[0].assigned_uplink, sub_areas[0].assigned_downlink};
  g.points.resize(cells);
  std::vector<GridKernel> kernels;
  kernels.reserve(n_sub);
  for (std::size_t s = 0; s < n_sub; ++s) {
    kernels.emplace_back(scenario, gs_position, ChannelPair{sub_areas[s].assigned_uplink, sub_areas[s].assigned_downlink},
                         uav_for(s));
  }
  const auto n_cells = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(static) num_threads(team)
  for (std::ptrdiff_t k = 0; k < n_cells; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    g.points[idx] = kernels[static_cast<std::size_t>(owner[idx])].evaluate(grid.point(idx));
  }
  for (const PointResult& p : g.points) {
    g.pass_count += p.pass ? 1 : 0;
    g.any_clamped = g.any_clamped || p.clamped;
  }
  g.flyable_ratio = static_cast<double>(g.pass_count) / static_cast<double>(cells);
  plan.combined_ratio = g.flyable_ratio;
  plan.sub_areas = std::move(sub_areas);
  return plan;
}

UniformPairResult best_uniform_pair(const Scenario& scenario, const GridSpec& grid, const Position3D& gs_position,
                                    int threads) {
  validate(grid);
  const std::vector<ChannelPair> pairs = all_pairs(scenario.channel_count);
  std::vector<std::size_t> counts(pairs.size(), 0);
  const auto n = static_cast<std::ptrdiff_t>(pairs.size());
  [[maybe_unused]] const int team = team_size(threads);
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
  for (std::ptrdiff_t p = 0; p < n; ++p) {
    const GridKernel kernel(scenario, gs_position, pairs[static_cast<std::size_t>(p)]);
    counts[static_cast<std::size_t>(p)] = count_flyable(kernel, grid);
  }
  std::size_t best = 0;
  for (std::size_t p = 1; p < pairs.size(); ++p) {
    if (counts[p] > counts[best]) best = p;
  }
  return {pairs[best], static_cast<double>(counts[best]) / static_cast<double>(grid.size()), counts[best]};
}

std::vector<ChannelConflict> cross_subarea_channel_check(const AllocationPlan& plan) {
  std::vector<ChannelConflict> out;
  const auto& s = plan.sub_areas;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (s[a].assigned_uplink == s[b].assigned_uplink) {
        out.push_back({s[a].index, s[b].index, Condition::Uplink, s[a].assigned_uplink});
      }
      if (s[a].assigned_downlink == s[b].assigned_downlink) {
        out.push_back({s[a].index, s[b].index, Condition::Downlink, s[a].assigned_downlink});
      }
    }
  }
  return out;
}

}  // namespace uavshare
