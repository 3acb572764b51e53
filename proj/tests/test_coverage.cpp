#include <cstring>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "uavshare/coverage.hpp"
#include "uavshare/error.hpp"
#include "uavshare/scenario_io.hpp"

using namespace uavshare;

namespace {

Scenario experiment_scenario() {
  return load_scenario(std::string(UAVSHARE_DATA_DIR) + "/paper_experiment.json");
}

GridSpec coarse(const Scenario& s, double res = 25.0) {
  GridSpec g = default_grid(s);
  g.resolution_m = res;
  return g;
}

bool same_points(const FlyableGrid& a, const FlyableGrid& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    const PointResult &p = a.points[k], &q = b.points[k];
    if (std::memcmp(&p.uplink_sinr_db, &q.uplink_sinr_db, sizeof(double)) != 0 ||
        std::memcmp(&p.downlink_sinr_db, &q.downlink_sinr_db, sizeof(double)) != 0 ||
        std::memcmp(&p.terrestrial_sinr_db, &q.terrestrial_sinr_db, sizeof(double)) != 0 ||
        std::memcmp(&p.worst_margin_db, &q.worst_margin_db, sizeof(double)) != 0 || p.binding != q.binding ||
        p.pass != q.pass || p.clamped != q.clamped) {
      return false;
    }
  }
  return a.pass_count == b.pass_count && a.flyable_ratio == b.flyable_ratio;
}

}  // namespace

TEST_CASE("grid dimensions tile the bounds with cell-centred points") {
  GridSpec g;
  CHECK(g.nx() == 100);
  CHECK(g.ny() == 100);
  CHECK(g.point(0, 0).x == 5.0);
  CHECK(g.point(99, 99).y == 995.0);
  g.resolution_m = 30.0;
  CHECK(g.nx() == 34);
  CHECK(g.step_x() * g.nx() == doctest::Approx(1000.0));
  CHECK(g.step_x() <= 30.0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Position3D p = g.point(k);
    REQUIRE(g.bounds.contains_horizontal(p.x, p.y));
  }
  g.resolution_m = 0.0;
  CHECK_THROWS_AS(validate(g), ValidationError);
  g.resolution_m = 10.0;
  g.altitude_m = 0.0;
  CHECK_THROWS_AS(validate(g), ValidationError);
}

TEST_CASE("no routers: the whole area is flyable and the corners agree with the oracle") {
  const Scenario s;
  const GridSpec g = default_grid(s);
  const FlyableGrid grid = compute_flyable_grid(s, s.ground_station.position, g);
  CHECK(grid.flyable_ratio == 1.0);
  CHECK(grid.pass_count == g.size());
  for (auto [i, j] : {std::pair{0, 0}, {99, 0}, {0, 99}, {99, 99}}) {
    const oracle::Sinr o = oracle::evaluate(s, g.point(i, j), s.ground_station.position, s.uavs[0].channels);
    CHECK(o.pass);
    CHECK(o.uplink > 11.0);
    CHECK(std::abs(grid.at(i, j).uplink_sinr_db - o.uplink) < 1e-9);
    CHECK(std::abs(grid.at(i, j).downlink_sinr_db - o.downlink) < 1e-9);
  }
}

TEST_CASE("conventional baseline on the bundled experiment scenario is fully excluded") {
  const Scenario s = with_mode(experiment_scenario(), Mode::Conventional);
  const FlyableGrid grid = compute_flyable_grid(s, s.ground_station.position, coarse(s));
  CHECK(grid.flyable_ratio == 0.0);
}

TEST_CASE("grid kernel equals the oracle point by point") {
  const Scenario s = experiment_scenario();
  const GridSpec g = coarse(s, 50.0);
  const Position3D gs{310, 640, 2};
  const FlyableGrid grid = compute_flyable_grid(s, gs, g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const oracle::Sinr o = oracle::evaluate(s, g.point(k), gs, s.uavs[0].channels);
    REQUIRE(std::abs(grid.points[k].uplink_sinr_db - o.uplink) < 1e-9);
    REQUIRE(std::abs(grid.points[k].downlink_sinr_db - o.downlink) < 1e-9);
    REQUIRE(std::abs(grid.points[k].terrestrial_sinr_db - o.terrestrial_min) < 1e-9);
    REQUIRE(grid.points[k].pass == o.pass);
  }
}

TEST_CASE("parallel and serial maps are bitwise identical for any thread count") {
  Scenario s = experiment_scenario();
  s.routers[0].tx_power_dbm = 20.0;
  const GridSpec g = coarse(s, 20.0);
  const Position3D gs{420, 380, 2};
  const FlyableGrid ref = compute_flyable_grid_serial(s, gs, g, s.uavs[0].channels);
  for (int t : {0, 1, 2, 3, 7}) CHECK(same_points(ref, compute_flyable_grid(s, gs, g, t)));
  CHECK(same_points(compute_flyable_grid(s, gs, g), compute_flyable_grid(s, gs, g)));
}

// Two maps with a non-trivial flyable set: conventional terminals against
// default-power routers, and directional terminals against weak routers.
static std::vector<Scenario> partial_scenarios() {
  Scenario conv = with_mode(experiment_scenario(), Mode::Conventional);
  for (RadioNode& r : conv.routers) r.tx_power_dbm = 20.0;
  Scenario weak = experiment_scenario();
  for (RadioNode& r : weak.routers) r.tx_power_dbm = 0.0;
  return {conv, weak};
}

TEST_CASE("property: raising a threshold never grows the flyable set") {
  for (const Scenario& s : partial_scenarios()) {
    const GridSpec g = coarse(s);
    const FlyableGrid base = compute_flyable_grid(s, {350, 450, 2}, g);
    REQUIRE(base.flyable_ratio > 0.0);
    REQUIRE(base.flyable_ratio < 1.0);
    for (double SharingThresholds::*field :
         {&SharingThresholds::uplink_min_db, &SharingThresholds::downlink_min_db,
          &SharingThresholds::terrestrial_min_db}) {
      for (double step : {0.5, 3.0, 20.0}) {
        Scenario t = s;
        t.thresholds.*field += step;
        const FlyableGrid tighter = compute_flyable_grid(t, {350, 450, 2}, g);
        CHECK(tighter.flyable_ratio <= base.flyable_ratio);
        for (std::size_t k = 0; k < g.size(); ++k) REQUIRE((!tighter.points[k].pass || base.points[k].pass));
      }
    }
  }
}

TEST_CASE("property: removing a router never shrinks the flyable set") {
  for (const Scenario& s : partial_scenarios()) {
    const GridSpec g = coarse(s);
    const FlyableGrid full = compute_flyable_grid(s, {350, 450, 2}, g);
    REQUIRE(full.flyable_ratio < 1.0);
    for (std::size_t drop = 0; drop < s.routers.size(); ++drop) {
      Scenario t = s;
      t.routers.erase(t.routers.begin() + static_cast<long>(drop));
      const FlyableGrid fewer = compute_flyable_grid(t, {350, 450, 2}, g);
      CHECK(fewer.flyable_ratio >= full.flyable_ratio);
      for (std::size_t k = 0; k < g.size(); ++k) REQUIRE((!full.points[k].pass || fewer.points[k].pass));
    }
  }
}

TEST_CASE("a grid point on top of the GS is flagged, not fatal") {
  const Scenario s = experiment_scenario();
  GridSpec g = coarse(s, 100.0);
  g.altitude_m = 2.0;
  const FlyableGrid grid = compute_flyable_grid(s, {450, 450, 2}, g);
  CHECK(grid.any_clamped);
  CHECK(grid.at(4, 4).clamped);
  CHECK_FALSE(grid.at(0, 0).clamped);
}

TEST_CASE("region ratios") {
  Scenario s = with_mode(experiment_scenario(), Mode::Conventional);
  for (RadioNode& r : s.routers) r.tx_power_dbm = 20.0;
  const GridSpec g = coarse(s);
  const FlyableGrid grid = compute_flyable_grid(s, s.ground_station.position, g);
  REQUIRE(grid.flyable_ratio > 0.0);
  REQUIRE(grid.flyable_ratio < 1.0);
  CHECK(flyable_ratio_within(grid, rectangle(s.bounds)) == grid.flyable_ratio);

  for (double cut : {250.0, 500.0, 730.0}) {
    std::size_t pass = 0, total = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.point(k).x < cut) {
        ++total;
        pass += grid.points[k].pass;
      }
    }
    const Polygon west = rectangle({0, cut, 0, 1000});
    CHECK(flyable_ratio_within(grid, west) == static_cast<double>(pass) / static_cast<double>(total));
  }

  std::size_t k = 0;
  while (!grid.points[k].pass) ++k;
  const Position3D p = g.point(k);
  CHECK(flyable_ratio_within(grid, rectangle({p.x - 1, p.x + 1, p.y - 1, p.y + 1})) == 1.0);
  CHECK_THROWS_AS(flyable_ratio_within(grid, rectangle({2000, 3000, 2000, 3000})), ValidationError);
}

TEST_CASE("property: abutting rectangles claim each grid point exactly once") {
  const GridSpec g{AreaBounds{}, 10.0, 30.0};
  const Polygon a = rectangle({0, 505, 0, 1000}), b = rectangle({505, 1000, 0, 1000});
  CHECK(point_in_polygon(b, 505.0, 5.0));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Position3D p = g.point(k);
    REQUIRE(point_in_polygon(a, p.x, p.y) != point_in_polygon(b, p.x, p.y));
  }
}
