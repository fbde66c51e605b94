#include <doctest.h>

#include <random>

#include "pqkit/error.hpp"
#include "pqkit/link.hpp"

using pqkit::LinkParams;

TEST_CASE("triangular fundamental diagram") {
  const LinkParams p{1, 1, 60, 20, 150};
  CHECK(p.flow(0) == 0);
  CHECK(p.flow(150) == 0);
  CHECK(p.flow(37.5) == 2250);
  CHECK_THROWS_AS(p.flow(-1), pqkit::DomainError);
  CHECK_THROWS_AS(p.flow(150.5), pqkit::DomainError);
}

TEST_CASE("traverse times") {
  const auto t = LinkParams{1, 1, 60, 20, 150}.traverse_times();
  CHECK(t.free_flow == doctest::Approx(1.0 / 60));
  CHECK(t.wave == doctest::Approx(1.0 / 20));
  CHECK(t.total == doctest::Approx(1.0 / 15));
  CHECK(t.total - (t.free_flow + t.wave) == 0.0);
  const auto s = LinkParams{1, 1, 30, 30, 150}.traverse_times();
  CHECK(s.free_flow == s.wave);
  CHECK(s.total == doctest::Approx(1.0 / 15));
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS((LinkParams{0, 1, 60, 20, 150}.validate()), pqkit::DomainError);
  CHECK_THROWS_AS((LinkParams{1, 1, -60, 20, 150}.validate()), pqkit::DomainError);
}

TEST_CASE("property: capacity bound and storage identity") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.1, 100.0);
  for (int i = 0; i < 500; ++i) {
    const LinkParams p{u(rng) / 10, 1 + std::floor(u(rng) / 20), u(rng), u(rng), u(rng) + 50};
    const double cap = p.capacity_flow();
    CHECK(p.storage_capacity() / p.traverse_times().total == doctest::Approx(cap).epsilon(1e-12));
    CHECK(p.flow(p.critical_density()) == doctest::Approx(cap).epsilon(1e-12));
    const auto t = p.traverse_times();
    CHECK(t.free_flow < t.total);
    CHECK(t.wave < t.total);
    CHECK((t.free_flow < t.wave) == (p.free_speed > p.wave_speed));
    std::uniform_real_distribution<double> k(0.0, p.lanes * p.jam_density);
    for (int j = 0; j < 20; ++j) CHECK(p.flow(k(rng)) <= cap * (1 + 1e-12));
  }
}

TEST_CASE("queue spec validation") {
  pqkit::QueueSpec q{pqkit::Capacity::finite(200), pqkit::Volume::from_veh(250)};
  CHECK_THROWS_AS(q.validate(), pqkit::DomainError);
  q.initial = pqkit::Volume::from_veh(200);
  CHECK_NOTHROW(q.validate());
  q.initial = pqkit::Volume::from_veh(-1);
  CHECK_THROWS_AS(q.validate(), pqkit::DomainError);
}
