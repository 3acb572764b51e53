#include <cmath>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "uavshare/error.hpp"
#include "uavshare/geometry.hpp"

using namespace uavshare;

TEST_CASE("distance: axis-aligned and 3-4-5") {
  CHECK(distance({0, 0, 0}, {0, 0, 30}) == 30.0);
  CHECK(distance({0, 0, 0}, {3, 4, 0}) == 5.0);
}

TEST_CASE("distance: area diagonal from a raised GS") {
  const double expected = std::sqrt(1000.0 * 1000.0 + 1000.0 * 1000.0 + 28.0 * 28.0);
  CHECK(distance({0, 0, 2}, {1000, 1000, 30}) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(distance({0, 0, 2}, {1000, 1000, 30}) == doctest::Approx(1414.49).epsilon(1e-5));
}

TEST_CASE("off-boresight angle: collinear, orthogonal, oblique") {
  CHECK(off_boresight_angle({0, 0, 0}, {0, 0, 30}, {0, 0, 60}) == doctest::Approx(0.0));
  CHECK(off_boresight_angle({0, 0, 0}, {0, 0, 30}, {100, 0, 0}) == doctest::Approx(90.0));
  const double expected = std::acos(100.0 / std::sqrt(100.0 * 100.0 + 30.0 * 30.0)) * 180.0 / oracle::kPi;
  CHECK(off_boresight_angle({0, 0, 0}, {100, 0, 30}, {100, 0, 0}) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(off_boresight_angle({0, 0, 0}, {100, 0, 30}, {100, 0, 0}) == doctest::Approx(16.70).epsilon(1e-3));
}

TEST_CASE("off-boresight angle: degenerate direction is rejected") {
  CHECK_THROWS_AS(off_boresight_angle({1, 2, 3}, {1, 2, 3}, {5, 5, 5}), GeometryError);
  CHECK_THROWS_AS(off_boresight_angle({1, 2, 3}, {5, 5, 5}, {1, 2, 3}), GeometryError);
}

TEST_CASE("property: distance symmetric, angle in [0,180] and matches acos oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-500.0, 500.0);
  for (int k = 0; k < 2000; ++k) {
    const Position3D a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
    CHECK(distance(a, b) == distance(b, a));
    const double th = off_boresight_angle(a, b, c);
    REQUIRE(th >= 0.0);
    REQUIRE(th <= 180.0);
    CHECK(th == doctest::Approx(oracle::angle_deg(a, b, c)).epsilon(1e-9));
    CHECK(th == doctest::Approx(off_boresight_angle(a, c, b)).epsilon(1e-12));
  }
}

TEST_CASE("validation of positions and bounds") {
  CHECK_THROWS_AS(validate(Position3D{NAN, 0, 0}), ValidationError);
  CHECK_THROWS_AS(validate(AreaBounds{0, 0, 0, 10}), ValidationError);
  CHECK_NOTHROW(validate(AreaBounds{}));
  CHECK(AreaBounds{}.center_x() == 500.0);
}
