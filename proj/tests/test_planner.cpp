#include <algorithm>
#include <cmath>
#include <map>

#include "doctest.h"
#include "uavshare/error.hpp"
#include "uavshare/planner.hpp"
#include "uavshare/scenario_io.hpp"

using namespace uavshare;

namespace {

Scenario experiment_scenario() {
  return load_scenario(std::string(UAVSHARE_DATA_DIR) + "/paper_experiment.json");
}

GridSpec coarse(const Scenario& s, double res) {
  GridSpec g = default_grid(s);
  g.resolution_m = res;
  return g;
}

double center_distance(const Scenario& s, const Position3D& p) {
  return std::hypot(p.x - s.bounds.center_x(), p.y - s.bounds.center_y());
}

}  // namespace

TEST_CASE("GS candidate lattice includes the centre and stays in bounds") {
  const Scenario s;
  const auto c = gs_candidates(s, 50.0);
  CHECK(c.size() == 441);
  CHECK(std::count(c.begin(), c.end(), Position3D{500, 500, 2}) == 1);
  for (const Position3D& p : c) CHECK(s.bounds.contains_horizontal(p.x, p.y));
  CHECK(gs_candidates(s, 250.0).size() == 25);
  CHECK_THROWS_AS(gs_candidates(s, 0.0), ValidationError);
}

TEST_CASE("no routers: every candidate is perfect and the centre wins the tie") {
  const Scenario s;
  const PlacementResult r = optimize_gs(s, 100.0, coarse(s, 50.0));
  for (const PlacementCandidate& c : r.candidates) CHECK(c.ratio == 1.0);
  CHECK(r.best_position == Position3D{500, 500, 2});
  CHECK(r.best_ratio == 1.0);
}

TEST_CASE("optimized placement dominates the centre placement") {
  Scenario s = experiment_scenario();
  for (RadioNode& r : s.routers) r.tx_power_dbm = 20.0;
  const GridSpec g = coarse(s, 25.0);
  const PlacementResult r = optimize_gs(s, 100.0, g);
  const double center = compute_flyable_grid(s, {500, 500, 2}, g).flyable_ratio;
  CHECK(r.best_ratio >= center);
}

TEST_CASE("a router cluster in the north-east pushes the GS to the far half") {
  // Weak routers make the terrestrial victims sensitive to where the beams point.
  Scenario s;
  for (auto [x, y] : {std::pair{880.0, 900.0}, {920.0, 870.0}, {900.0, 930.0}}) {
    s.routers.push_back(RadioNode::router("r", {x, y, 1.5}, 0.0, s.uavs[0].channels.uplink));
  }
  const GridSpec g = coarse(s, 25.0);
  const PlacementResult r = optimize_gs(s, 250.0, g);
  REQUIRE(r.candidates.size() == 25);

  // Brute-force sweep with the same tie-break: pass count, centre distance, then (x, y).
  const auto cands = gs_candidates(s, 250.0);
  Position3D best = cands[0];
  std::size_t best_count = 0;
  bool first = true;
  for (const Position3D& c : cands) {
    const std::size_t count = compute_flyable_grid(s, c, g).pass_count;
    const auto key = [&](const Position3D& p) { return std::tuple(center_distance(s, p), p.x, p.y); };
    if (first || count > best_count || (count == best_count && key(c) < key(best))) {
      best = c;
      best_count = count;
      first = false;
    }
  }
  CHECK(r.best_position == best);
  CHECK(r.best_position.x + r.best_position.y < 1000.0);
  CHECK(r.best_ratio > compute_flyable_grid(s, {1000, 1000, 2}, g).flyable_ratio);
}

TEST_CASE("placement search is independent of the thread count") {
  Scenario s = experiment_scenario();
  for (RadioNode& r : s.routers) r.tx_power_dbm = 20.0;
  const GridSpec g = coarse(s, 50.0);
  const PlacementResult a = optimize_gs(s, 125.0, g, 1);
  const PlacementResult b = optimize_gs(s, 125.0, g, 3);
  CHECK(a.best_position == b.best_position);
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (std::size_t k = 0; k < a.candidates.size(); ++k) CHECK(a.candidates[k].pass_count == b.candidates[k].pass_count);
}

TEST_CASE("partition: single area and equal strips") {
  const Scenario s;
  const GridSpec g = default_grid(s);
  const auto one = partition_area(s.bounds, 1, PartitionStrategy::Strips, s.ground_station.position, g);
  REQUIRE(one.size() == 1);
  CHECK(one[0].rect == s.bounds);
  const auto three = partition_area(s.bounds, 3, PartitionStrategy::Strips, s.ground_station.position, g);
  REQUIRE(three.size() == 3);
  for (const SubArea& a : three) {
    CHECK(a.rect.width() == doctest::Approx(1000.0 / 3.0));
    CHECK(a.rect.height() == 1000.0);
  }
  CHECK(three[2].rect.x_max == 1000.0);
  CHECK_THROWS_AS(partition_area(s.bounds, 101, PartitionStrategy::Strips, s.ground_station.position, g),
                  ValidationError);
  CHECK_THROWS_AS(partition_area(s.bounds, 0, PartitionStrategy::Strips, s.ground_station.position, g),
                  ValidationError);
}

TEST_CASE("two sectors about a centred GS split the cells evenly") {
  const Scenario s;
  const GridSpec g = default_grid(s);
  const auto two = partition_area(s.bounds, 2, PartitionStrategy::Sectors, {500, 500, 2}, g);
  std::size_t count0 = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Position3D p = g.point(k);
    count0 += two[0].contains(p.x, p.y);
  }
  CHECK(count0 == g.size() / 2);
}

TEST_CASE("property: partitions tile the grid exactly") {
  const Scenario s;
  for (double res : {10.0, 30.0, 70.0}) {
    const GridSpec g = coarse(s, res);
    for (PartitionStrategy st : {PartitionStrategy::Strips, PartitionStrategy::Sectors}) {
      for (const Position3D gs : {Position3D{500, 500, 2}, Position3D{130, 870, 2}, Position3D{0, 0, 2}}) {
        for (int n = 1; n <= 7; ++n) {
          const auto parts = partition_area(s.bounds, n, st, gs, g);
          REQUIRE(parts.size() == static_cast<std::size_t>(n));
          std::vector<std::size_t> counts(parts.size(), 0);
          for (std::size_t k = 0; k < g.size(); ++k) {
            const Position3D p = g.point(k);
            int owners = 0;
            for (std::size_t a = 0; a < parts.size(); ++a) {
              if (parts[a].contains(p.x, p.y)) {
                ++owners;
                ++counts[a];
              }
            }
            REQUIRE(owners == 1);
          }
          if (st == PartitionStrategy::Sectors && n > 1) {
            // Cuts only move to avoid splitting cells at an identical angle.
            std::map<double, std::size_t> ties;
            for (std::size_t k = 0; k < g.size(); ++k) {
              const Position3D p = g.point(k);
              double a = std::atan2(p.y - gs.y, p.x - gs.x);
              if (a < 0.0) a += 2.0 * 3.14159265358979323846;
              ++ties[a];
            }
            std::size_t widest = 0;
            for (const auto& [a, c] : ties) widest = std::max(widest, c);
            const std::size_t target = g.size() / static_cast<std::size_t>(n);
            for (std::size_t c : counts) {
              CHECK(c + widest + 1 >= target);
              CHECK(c <= target + 2 * widest + 1);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("allocation: no routers picks the lowest pair everywhere") {
  const Scenario s;
  const GridSpec g = coarse(s, 50.0);
  const AllocationPlan plan =
      allocate_channels(s, partition_area(s.bounds, 1, PartitionStrategy::Strips, {500, 500, 2}, g), g, {500, 500, 2});
  CHECK(plan.sub_areas[0].assigned_uplink == ChannelId{0});
  CHECK(plan.sub_areas[0].assigned_downlink == ChannelId{1});
  CHECK(plan.combined_ratio == 1.0);
  CHECK_FALSE(plan.warning);
}

TEST_CASE("allocation steers clear of a local router and matches an exhaustive pair scan") {
  Scenario s;
  s.routers.push_back(RadioNode::router("r", {200, 500, 1.5}, 20.0, ChannelId{2}));
  const GridSpec g = coarse(s, 50.0);
  const Position3D gs{500, 500, 2};
  const auto parts = partition_area(s.bounds, 2, PartitionStrategy::Strips, gs, g);
  const AllocationPlan plan = allocate_channels(s, parts, g, gs);
  const SubArea& west = plan.sub_areas[0];
  CHECK(std::abs(west.assigned_uplink.index - 2) >= 3);
  CHECK(std::abs(west.assigned_downlink.index - 2) >= 3);

  std::size_t best = 0;
  for (int u = 0; u < 10; ++u) {
    for (int d = 0; d < 10; ++d) {
      if (u == d) continue;
      const FlyableGrid grid = compute_flyable_grid(s, gs, g, ChannelPair{ChannelId{u}, ChannelId{d}});
      std::size_t count = 0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        const Position3D p = g.point(k);
        if (west.contains(p.x, p.y)) count += grid.points[k].pass;
      }
      best = std::max(best, count);
    }
  }
  CHECK(static_cast<std::size_t>(std::llround(west.ratio * west.point_count)) == best);
}

TEST_CASE("allocation dominates the best uniform pair and flags infeasible areas") {
  Scenario s = experiment_scenario();
  for (RadioNode& r : s.routers) r.tx_power_dbm = 20.0;
  const GridSpec g = coarse(s, 50.0);
  const Position3D gs{500, 500, 2};
  for (PartitionStrategy st : {PartitionStrategy::Strips, PartitionStrategy::Sectors}) {
    const AllocationPlan plan = allocate_channels(s, partition_area(s.bounds, 3, st, gs, g), g, gs);
    CHECK(plan.combined_ratio >= best_uniform_pair(s, g, gs).ratio);
  }

  Scenario hopeless = s;
  hopeless.thresholds.uplink_min_db = 500.0;
  const AllocationPlan bad =
      allocate_channels(hopeless, partition_area(s.bounds, 2, PartitionStrategy::Strips, gs, g), g, gs);
  CHECK(bad.warning);
  CHECK(bad.combined_ratio == 0.0);
  CHECK(bad.sub_areas[0].infeasible);
}

TEST_CASE("cross-area channel reuse report") {
  AllocationPlan plan;
  plan.sub_areas.resize(3);
  for (int k = 0; k < 3; ++k) {
    plan.sub_areas[k].index = k;
    plan.sub_areas[k].assigned_uplink = ChannelId{2 * k};
    plan.sub_areas[k].assigned_downlink = ChannelId{2 * k + 1};
  }
  CHECK(cross_subarea_channel_check(plan).empty());
  plan.sub_areas[2].assigned_uplink = ChannelId{0};
  const auto one = cross_subarea_channel_check(plan);
  REQUIRE(one.size() == 1);
  CHECK(one[0].sub_area_a == 0);
  CHECK(one[0].sub_area_b == 2);
  CHECK(one[0].direction == Condition::Uplink);
}

TEST_CASE("six sub-areas on ten channels report exactly the pigeonhole overlaps") {
  const Scenario s;
  const GridSpec g = coarse(s, 50.0);
  const AllocationPlan plan =
      allocate_channels(s, partition_area(s.bounds, 6, PartitionStrategy::Strips, {500, 500, 2}, g), g, {500, 500, 2});
  std::size_t expected = 0;
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) {
      expected += plan.sub_areas[a].assigned_uplink == plan.sub_areas[b].assigned_uplink;
      expected += plan.sub_areas[a].assigned_downlink == plan.sub_areas[b].assigned_downlink;
    }
  }
  CHECK(cross_subarea_channel_check(plan).size() == expected);
  CHECK(expected >= 1);
}
