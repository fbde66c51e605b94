#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "pqkit/error.hpp"
#include "pqkit/volume.hpp"

using pqkit::Capacity;
using pqkit::Volume;

TEST_CASE("volume round-trips doubles on the tick grid") {
  for (double v : {0.0, 1.0, 188.0, 0.01, 12.5, 200.0 - 12.0, 0x1p-11, 1e9}) {
    CHECK(Volume::from_veh(v).veh() == v);
  }
  CHECK(Volume::from_veh(-3.25).veh() == -3.25);
}

TEST_CASE("volume rejects non-finite and huge values") {
  CHECK_THROWS_AS(Volume::from_veh(std::numeric_limits<double>::quiet_NaN()), pqkit::DomainError);
  CHECK_THROWS_AS(Volume::from_veh(std::numeric_limits<double>::infinity()), pqkit::DomainError);
  CHECK_THROWS_AS(Volume::from_veh(0x1p62), pqkit::DomainError);
}

TEST_CASE("volume arithmetic is exact and associative") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 500.0);
  for (int i = 0; i < 1000; ++i) {
    const Volume a = Volume::from_veh(u(rng));
    const Volume b = Volume::from_veh(u(rng));
    const Volume c = Volume::from_veh(u(rng));
    CHECK((a + b) - c == a + (b - c));
    CHECK((a + b) - b == a);
    CHECK(min(a, b) + max(a, b) == a + b);
  }
}

TEST_CASE("scaled stays inside [0, v] and is exact at ratio 1") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 300.0);
  std::uniform_real_distribution<double> r(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Volume v = Volume::from_veh(u(rng));
    const Volume s = v.scaled(r(rng));
    CHECK(s >= Volume::zero());
    CHECK(s <= v);
    CHECK(v.scaled(1.0) == v);
  }
  CHECK(Volume::from_veh(200.0).scaled(0.1).veh() == doctest::Approx(20.0).epsilon(1e-15));
}

TEST_CASE("capacity finite and infinite") {
  const Capacity c = Capacity::finite(200.0);
  CHECK(c.is_finite());
  CHECK(c.veh() == 200.0);
  CHECK(c.volume() == Volume::from_veh(200.0));
  CHECK_FALSE(Capacity::infinite().is_finite());
  CHECK(std::isinf(Capacity::infinite().veh()));
  CHECK_THROWS(Capacity::finite(-1.0));
}
