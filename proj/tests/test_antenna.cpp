#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "uavshare/antenna.hpp"
#include "uavshare/error.hpp"

using namespace uavshare;

TEST_CASE("GS pattern anchors") {
  const AntennaPattern gs = AntennaPattern::directional(25.0, 4.0, 25.0);
  CHECK(gain(gs, 0.0) == 25.0);
  CHECK(gain(gs, 2.0) == doctest::Approx(22.0).epsilon(1e-15));
  CHECK(gain(gs, 90.0) == 0.0);
  CHECK(gain(gs, 180.0) == 0.0);
}

TEST_CASE("half-beamwidth is exactly 3 dB down") {
  for (double bw : {1.0, 4.0, 36.0, 90.0, 180.0}) {
    const AntennaPattern p = AntennaPattern::directional(15.0, bw, 40.0);
    CHECK(std::abs(gain(p, bw / 2.0) - 12.0) <= 1e-9);
  }
}

TEST_CASE("omni pattern is flat") {
  const AntennaPattern o = AntennaPattern::omni(0.0);
  for (double th = 0.0; th <= 180.0; th += 7.5) CHECK(gain(o, th) == 0.0);
}

TEST_CASE("angles outside [0, 180] are rejected") {
  const AntennaPattern p = AntennaPattern::directional(15.0, 36.0, 25.0);
  CHECK_THROWS_AS(gain(p, -0.1), ValidationError);
  CHECK_THROWS_AS(gain(p, 180.1), ValidationError);
}

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS(validate(AntennaPattern::directional(15.0, 0.0, 25.0)), ValidationError);
  CHECK_THROWS_AS(validate(AntennaPattern::directional(15.0, 181.0, 25.0)), ValidationError);
  CHECK_THROWS_AS(validate(AntennaPattern::directional(15.0, 36.0, 0.0)), ValidationError);
  CHECK_NOTHROW(validate(AntennaPattern::directional(15.0, 180.0, 25.0)));
}

TEST_CASE("EIRP of the default terminals") {
  CHECK(eirp(AntennaPattern::directional(25.0, 4.0, 25.0), 11.0) == 36.0);
  CHECK(eirp(AntennaPattern::directional(15.0, 36.0, 25.0), 0.0) == 15.0);
  CHECK(eirp(AntennaPattern::omni(0.0), 36.0) == 36.0);
}

TEST_CASE("property: gain non-increasing in angle, bounded by peak and floor, matches oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> th(0.0, 180.0), bw(1.0, 180.0), fl(1.0, 40.0), pk(-5.0, 30.0);
  for (int k = 0; k < 2000; ++k) {
    const AntennaPattern p = AntennaPattern::directional(pk(rng), bw(rng), fl(rng));
    double a = th(rng), b = th(rng);
    if (a > b) std::swap(a, b);
    CHECK(gain(p, a) >= gain(p, b));
    CHECK(gain(p, a) <= p.peak_gain_dbi);
    CHECK(gain(p, b) >= p.peak_gain_dbi - p.sidelobe_floor_db);
    CHECK(gain(p, a) == doctest::Approx(oracle::gain_dbi(p, a)).epsilon(1e-14));
  }
}
