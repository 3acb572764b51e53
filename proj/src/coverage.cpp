#include "uavshare/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavshare/error.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace uavshare {

int GridSpec::nx() const {
  return static_cast<int>(std::ceil(bounds.width() / resolution_m * (1.0 - 1e-12)));
}

int GridSpec::ny() const {
  return static_cast<int>(std::ceil(bounds.height() / resolution_m * (1.0 - 1e-12)));
}

void validate(const GridSpec& grid) {
  try {
    validate(grid.bounds);
  } catch (const ValidationError& e) {
    throw ValidationError::nested("bounds", e);
  }
  if (!(grid.resolution_m > 0.0) || !std::isfinite(grid.resolution_m)) {
    throw ValidationError("resolution_m", "grid resolution must be > 0");
  }
  if (!(grid.altitude_m > 0.0) || !std::isfinite(grid.altitude_m)) {
    throw ValidationError("altitude_m", "UAV altitude must be > 0");
  }
  const double cells = std::ceil(grid.bounds.width() / grid.resolution_m) *
                       std::ceil(grid.bounds.height() / grid.resolution_m);
  if (cells > 1e8) throw ValidationError("resolution_m", "grid would exceed 1e8 points");
}

GridSpec default_grid(const Scenario& scenario) {
  return GridSpec{scenario.bounds, scenario.grid.resolution_m, scenario.grid.altitude_m};
}

namespace {

constexpr double kLn10 = 2.302585092994045684;

double to_mw(double dbm) { return std::exp(dbm * (kLn10 / 10.0)); }
double to_db(double mw) { return (10.0 / kLn10) * std::log(mw); }

// Log-distance loss with the close-in clamp; never throws.
double loss_db(const PathLossModel& m, double exponent, double d, bool& clamped) {
  if (d < m.reference_distance_m) {
    d = m.reference_distance_m;
    clamped = true;
  }
  return m.reference_loss_db + 10.0 * exponent * std::log10(d / m.reference_distance_m);
}

// Same as loss_db() but from a squared distance.
double loss_db_sq(const PathLossModel& m, double exponent, double d_sq, bool& clamped) {
  const double ref_sq = m.reference_distance_m * m.reference_distance_m;
  if (d_sq < ref_sq) {
    d_sq = ref_sq;
    clamped = true;
  }
  return m.reference_loss_db + (5.0 / kLn10) * exponent * std::log(d_sq / ref_sq);
}

}  // namespace

GridKernel::FastPattern::FastPattern(const AntennaPattern& p)
    : pattern(p), omni(p.kind == AntennaPattern::Kind::Omni) {
  if (!omni) {
    const double floor_deg = p.beamwidth_deg * std::sqrt(p.sidelobe_floor_db / 12.0);
    // Past 180 degrees the floor is never reached and the check must not fire.
    cos_floor = floor_deg >= 180.0 ? -2.0 : std::cos(deg_to_rad(floor_deg));
  }
}

double GridKernel::FastPattern::gain(const Vec3& boresight, double boresight_norm, const Vec3& toward,
                                     double toward_norm) const {
  if (omni) return pattern.peak_gain_dbi;
  // A margin keeps the shortcut away from the exact floor crossing, where
  // the atan2 route decides.
  const double c = dot(boresight, toward) / (boresight_norm * toward_norm);
  if (c < cos_floor - 1e-9) return pattern.peak_gain_dbi - pattern.sidelobe_floor_db;
  return pattern.peak_gain_dbi - attenuation_db(pattern, angle_between_deg(boresight, toward));
}

namespace {

}  // namespace

GridKernel::GridKernel(const Scenario& scenario, const Position3D& gs_position, ChannelPair channels,
                       std::size_t uav_index)
    : scenario_(&scenario),
      gs_(gs_position),
      uav_tx_dbm_(scenario.uavs.at(uav_index).tx_power_dbm),
      uav_antenna_(scenario.uavs.at(uav_index).antenna),
      gs_tx_dbm_(scenario.ground_station.tx_power_dbm),
      gs_antenna_(scenario.ground_station.antenna) {
  const LinkModels& m = scenario.models;
  uplink_noise_mw_ = dbm_to_mw(noise_power_dbm(m.gs_noise));
  downlink_noise_mw_ = dbm_to_mw(noise_power_dbm(m.uav_noise));

  bool ue_clamped = false;
  const double ue_loss = loss_db(m.path_loss, m.path_loss.exponent_ground, m.ue_distance_m, ue_clamped);
  const double wlan_noise_mw = dbm_to_mw(noise_power_dbm(m.wlan_noise));

  routers_.reserve(scenario.routers.size());
  for (const RadioNode& r : scenario.routers) {
    RouterTerms t{};
    t.position = r.position;
    t.from_gs = r.position - gs_position;
    // A router on top of the GS has no direction; the clamp flag records it.
    const double d_gs = norm(t.from_gs);
    t.from_gs_norm = d_gs;
    t.gs_clamped = ue_clamped || d_gs == 0.0;
    t.gs_path_loss_db = loss_db(m.path_loss, m.path_loss.exponent_ground, d_gs, t.gs_clamped) +
                        m.building_entry_loss_db;
    const double router_gain = r.antenna.peak_gain_dbi;

    const Rejection up = m.rejection(channels.uplink, r.channel);
    t.uplink_rejected = up.is_total();
    t.to_gs_dbm = r.tx_power_dbm + router_gain - t.gs_path_loss_db - up.db();

    const Rejection down = m.rejection(channels.downlink, r.channel);
    t.downlink_rejected = down.is_total();
    t.to_uav_base_dbm = r.tx_power_dbm + router_gain - m.building_entry_loss_db - down.db();

    const Rejection from_uav = m.rejection(r.channel, channels.uplink);
    t.from_uav_rejected = from_uav.is_total();
    t.from_uav_base_dbm = uav_tx_dbm_ + router_gain - m.building_entry_loss_db - from_uav.db();

    const Rejection from_gs = m.rejection(r.channel, channels.downlink);
    t.from_gs_rejected = from_gs.is_total();
    t.from_gs_dbm_minus_gain = gs_tx_dbm_ + router_gain - t.gs_path_loss_db - from_gs.db();

    t.signal_dbm = r.tx_power_dbm + router_gain - ue_loss;
    t.noise_mw = wlan_noise_mw;
    routers_.push_back(t);
  }
}

PointResult GridKernel::evaluate(const Position3D& uav) const {
  const Scenario& s = *scenario_;
  const PathLossModel& plm = s.models.path_loss;
  PointResult out;

  Vec3 gs_boresight = uav - gs_;
  double d = norm(gs_boresight);
  const double air_loss = loss_db(plm, plm.exponent_air, d, out.clamped);
  if (d == 0.0) {
    // UAV on top of the GS antenna: no pointing direction, look vertically.
    gs_boresight = {0.0, 0.0, 1.0};
    d = 1.0;
  }
  const Vec3 uav_boresight{-gs_boresight.x, -gs_boresight.y, -gs_boresight.z};
  const double peak_sum = uav_antenna_.pattern.peak_gain_dbi + gs_antenna_.pattern.peak_gain_dbi;
  const double uplink_signal = uav_tx_dbm_ + peak_sum - air_loss;
  const double downlink_signal = gs_tx_dbm_ + peak_sum - air_loss;

  double uplink_i = 0.0;
  double downlink_i = 0.0;
  double worst_terr = std::numeric_limits<double>::infinity();
  for (const RouterTerms& r : routers_) {
    const Vec3 to_router = r.position - uav;
    const double d_ur_sq = dot(to_router, to_router);
    const double d_ur = std::sqrt(d_ur_sq);
    const double g_uav = d_ur > 0.0 ? uav_antenna_.gain(uav_boresight, d, to_router, d_ur)
                                    : uav_antenna_.pattern.peak_gain_dbi;
    const double g_gs = r.from_gs_norm > 0.0 ? gs_antenna_.gain(gs_boresight, d, r.from_gs, r.from_gs_norm)
                                             : gs_antenna_.pattern.peak_gain_dbi;
    const double ur_loss = loss_db_sq(plm, plm.exponent_air, d_ur_sq, out.clamped);
    out.clamped = out.clamped || r.gs_clamped;

    if (!r.uplink_rejected) uplink_i += to_mw(r.to_gs_dbm + g_gs);
    if (!r.downlink_rejected) downlink_i += to_mw(r.to_uav_base_dbm + g_uav - ur_loss);

    double terr_i = 0.0;
    if (!r.from_uav_rejected) terr_i += to_mw(r.from_uav_base_dbm + g_uav - ur_loss);
    if (!r.from_gs_rejected) terr_i += to_mw(r.from_gs_dbm_minus_gain + g_gs);
    const double terr = r.signal_dbm - to_db(terr_i + r.noise_mw);
    worst_terr = std::min(worst_terr, terr);
  }

  out.uplink_sinr_db = uplink_signal - to_db(uplink_i + uplink_noise_mw_);
  out.downlink_sinr_db = downlink_signal - to_db(downlink_i + downlink_noise_mw_);
  out.terrestrial_sinr_db = worst_terr;

  const SharingThresholds& th = s.thresholds;
  const double m_up = out.uplink_sinr_db - th.uplink_min_db;
  const double m_down = out.downlink_sinr_db - th.downlink_min_db;
  const double m_terr = worst_terr - th.terrestrial_min_db;
  out.worst_margin_db = m_up;
  out.binding = Condition::Uplink;
  if (m_down < out.worst_margin_db) {
    out.worst_margin_db = m_down;
    out.binding = Condition::Downlink;
  }
  if (m_terr < out.worst_margin_db) {
    out.worst_margin_db = m_terr;
    out.binding = Condition::Terrestrial;
  }
  out.pass = m_up > 0.0 && m_down > 0.0 && m_terr > 0.0;
  return out;
}

namespace {

FlyableGrid make_result(const GridSpec& grid, const Position3D& gs, ChannelPair channels) {
  FlyableGrid g;
  g.spec = grid;
  g.gs_position = gs;
  g.channels = channels;
  g.points.resize(grid.size());
  return g;
}

void finish(FlyableGrid& g) {
  g.pass_count = 0;
  g.any_clamped = false;
  for (const PointResult& p : g.points) {
    g.pass_count += p.pass ? 1 : 0;
    g.any_clamped = g.any_clamped || p.clamped;
  }
  g.flyable_ratio = g.points.empty() ? 0.0 : static_cast<double>(g.pass_count) / static_cast<double>(g.points.size());
}

void check_inputs(const Scenario& scenario, const Position3D& gs, const GridSpec& grid) {
  validate(grid);
  validate(gs);
  if (!scenario.bounds.contains_horizontal(gs.x, gs.y)) {
    throw ValidationError("gs_position", "ground station must lie inside the scenario bounds");
  }
}

ChannelPair first_uav_channels(const Scenario& s) {
  if (s.uavs.empty()) throw ValidationError("$.uavs", "at least one UAV is required");
  return s.uavs.front().channels;
}

}  // namespace

FlyableGrid compute_flyable_grid(const Scenario& scenario, const Position3D& gs_position, const GridSpec& grid,
                                 int threads) {
  return compute_flyable_grid(scenario, gs_position, grid, first_uav_channels(scenario), threads);
}

FlyableGrid compute_flyable_grid(const Scenario& scenario, const Position3D& gs_position, const GridSpec& grid,
                                 ChannelPair channels, int threads) {
  check_inputs(scenario, gs_position, grid);
  const GridKernel kernel(scenario, gs_position, channels);
  FlyableGrid g = make_result(grid, gs_position, channels);
  const auto n = static_cast<std::ptrdiff_t>(g.points.size());
#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(team)
#endif
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    g.points[static_cast<std::size_t>(k)] = kernel.evaluate(grid.point(static_cast<std::size_t>(k)));
  }
  (void)threads;
  finish(g);
  return g;
}

FlyableGrid compute_flyable_grid_serial(const Scenario& scenario, const Position3D& gs_position,
                                        const GridSpec& grid, ChannelPair channels) {
  check_inputs(scenario, gs_position, grid);
  const GridKernel kernel(scenario, gs_position, channels);
  FlyableGrid g = make_result(grid, gs_position, channels);
  for (int j = 0; j < grid.ny(); ++j) {
    for (int i = 0; i < grid.nx(); ++i) g.points[grid.index(i, j)] = kernel.evaluate(grid.point(i, j));
  }
  finish(g);
  return g;
}

std::size_t count_flyable(const GridKernel& kernel, const GridSpec& grid) {
  std::size_t count = 0;
  const std::size_t n = grid.size();
  for (std::size_t k = 0; k < n; ++k) count += kernel.evaluate(grid.point(k)).pass ? 1 : 0;
  return count;
}

bool point_in_polygon(std::span<const Point2D> polygon, double x, double y) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2D& a = polygon[i];
    const Point2D& b = polygon[j];
    if ((a.y > y) != (b.y > y)) {
      const double x_cross = (b.x - a.x) * (y - a.y) / (b.y - a.y) + a.x;
      if (x < x_cross) inside = !inside;
    }
  }
  return inside;
}

Polygon rectangle(const AreaBounds& b) {
  return {{b.x_min, b.y_min}, {b.x_max, b.y_min}, {b.x_max, b.y_max}, {b.x_min, b.y_max}};
}

double flyable_ratio_within(const FlyableGrid& grid, std::span<const Point2D> region) {
  if (region.size() < 3) throw ValidationError("region", "polygon needs at least 3 vertices");
  std::size_t inside = 0;
  std::size_t passing = 0;
  for (int j = 0; j < grid.spec.ny(); ++j) {
    for (int i = 0; i < grid.spec.nx(); ++i) {
      const Position3D p = grid.spec.point(i, j);
      if (!point_in_polygon(region, p.x, p.y)) continue;
      ++inside;
      passing += grid.at(i, j).pass ? 1 : 0;
    }
  }
  if (inside == 0) throw ValidationError("region", "region contains no grid points");
  return static_cast<double>(passing) / static_cast<double>(inside);
}

}  // namespace uavshare
