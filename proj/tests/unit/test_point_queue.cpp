#include <doctest.h>

#include <cmath>
#include <random>

#include "../support.hpp"
#include "pqkit/error.hpp"
#include "pqkit/point_queue.hpp"
#include "pqkit/simulation.hpp"

using namespace pqkit;
using testing_support::pq;

namespace {

Volume V(double v) { return Volume::from_veh(v); }

const Capacity kCap200 = Capacity::finite(200);

double step_a(PqModel m, double queue, double arrival, double service, double dt,
              const Capacity& cap = kCap200, Safety safety = Safety::kChecked) {
  return step_pq({m, Formulation::kA}, PqState::initial(V(queue)), arrival, service, dt, cap,
                 safety)
      .next.queue.veh();
}

}  // namespace

TEST_CASE("discrete demand and supply table") {
  auto ds = discrete_demand_supply(PqModel::kPqm1, V(0), V(10), V(12), kCap200);
  CHECK(ds.demand == V(10));
  CHECK(*ds.supply == V(212));
  ds = discrete_demand_supply(PqModel::kPqm2, V(200), V(20), V(12), kCap200);
  CHECK(ds.demand == V(200));
  CHECK(*ds.supply == V(0));
  ds = discrete_demand_supply(PqModel::kPqm3, V(0), V(0), V(7), kCap200);
  CHECK(ds.demand == V(0));
  CHECK(*ds.supply == V(200));
  ds = discrete_demand_supply(PqModel::kPqm4, V(50), V(20), V(12), kCap200);
  CHECK(ds.demand == V(50));
  CHECK(*ds.supply == V(162));
  CHECK_FALSE(discrete_demand_supply(PqModel::kPqm1, V(50), V(20), V(12), Capacity::infinite())
                  .supply.has_value());
}

TEST_CASE("discrete demand and supply reject out-of-range queues") {
  CHECK_THROWS_AS(discrete_demand_supply(PqModel::kPqm1, V(-1), V(1), V(1), kCap200), DomainError);
  CHECK_THROWS_AS(discrete_demand_supply(PqModel::kPqm2, V(201), V(1), V(1), kCap200), DomainError);
  CHECK_NOTHROW(discrete_demand_supply(PqModel::kPqm2, V(201), V(1), V(1), kCap200,
                                       Safety::kUnchecked));
}

TEST_CASE("single steps") {
  CHECK(step_a(PqModel::kPqm1, 100, 2000, 1200, 0.01) == 108);
  CHECK(step_a(PqModel::kPqm2, 0, 0, 1200, 0.01) == 0);
  CHECK(step_a(PqModel::kPqm3, 190, 2000, 1200, 0.01) == 188);
}

TEST_CASE("well-definedness bound") {
  CHECK(well_definedness_bound(PqModel::kPqm3, 2000, 1200, kCap200) ==
        doctest::Approx(1.0 / 6.0));
  CHECK(well_definedness_bound(PqModel::kPqm4, 2000, 1200, kCap200) == doctest::Approx(0.1));
  CHECK(std::isinf(well_definedness_bound(PqModel::kPqm1, 2000, 1200, kCap200)));
  CHECK(std::isinf(well_definedness_bound(PqModel::kPqm2, 9e9, 9e9, kCap200)));
  for (PqModel m : kAllPqModels) {
    CHECK(std::isinf(well_definedness_bound(m, 2000, 1200, Capacity::infinite())));
  }
  CHECK(std::isinf(well_definedness_bound(PqModel::kPqm3, 2000, 0, kCap200)));
  CHECK(std::isinf(well_definedness_bound(PqModel::kPqm4, 0, 1200, kCap200)));
}

TEST_CASE("bound violation names the bound") {
  try {
    require_well_defined(PqModel::kPqm3, 2000, 1200, kCap200, 0.2);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("PQM3-D requires Δt ≤ Λ/σ_max = 0.1667 hr") == 0);
  }
  CHECK_NOTHROW(require_well_defined(PqModel::kPqm3, 2000, 1200, kCap200, 1.0 / 6.0));
}

TEST_CASE("unsafe PQM3 beyond the bound goes negative") {
  // Full queue, inflow blocked, one step drains sigma*dt > capacity.
  const Capacity cap = Capacity::finite(10);
  CHECK(step_a(PqModel::kPqm3, 10, 2000, 1200, 0.01, cap, Safety::kUnchecked) == -2);
}

TEST_CASE("vickrey step") {
  CHECK(step_vickrey(0.0, 1000, 1200, 0.01) == 0);
  CHECK(step_vickrey(5.0, 2000, 1200, 0.01) == 13);
  CHECK(step_vickrey(5.0, 0, 1200, 0.01) == 0);
}

TEST_CASE("property: vickrey coincides with PQM1 and PQM3 at infinite capacity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> q(0, 400), r(0, 3000), dt(1e-4, 0.05);
  for (int i = 0; i < 2000; ++i) {
    const double x = q(rng), a = r(rng), s = r(rng), h = dt(rng);
    const double v = step_vickrey(x, a, s, h);
    CHECK(step_a(PqModel::kPqm1, x, a, s, h, Capacity::infinite()) == v);
    CHECK(step_a(PqModel::kPqm3, x, a, s, h, Capacity::infinite()) == v);
  }
}

TEST_CASE("property: Moran form of PQM3 with finite capacity") {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> cap(1, 400), frac(0, 1), r(0, 3000);
  for (int i = 0; i < 2000; ++i) {
    const Capacity c = Capacity::finite(std::round(cap(rng)));
    const Volume q = Volume::from_veh(c.veh() * frac(rng));
    const Volume a = volume_over(r(rng), 0.01);
    const Volume s = volume_over(r(rng), 0.01);
    const auto step = step_pq_volumes({PqModel::kPqm3, Formulation::kA}, PqState::initial(q), a,
                                      s, 0.01, c, Safety::kUnchecked);
    CHECK(step.next.queue == min(a + q, c.volume()) - min(a + q, s));
  }
}

TEST_CASE("property: queues stay in [0, capacity] within the bound") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> cap(5, 400), frac(0, 1), r(0, 4000), u(0, 1);
  for (PqModel m : kAllPqModels) {
    for (int i = 0; i < 3000; ++i) {
      const Capacity c = Capacity::finite(cap(rng));
      const double a = r(rng), s = r(rng);
      const double bound = well_definedness_bound(m, a, s, c);
      const double dt = std::isinf(bound) ? 1.0 * u(rng) : bound * u(rng);
      if (dt <= 0) continue;
      const double next = step_a(m, c.veh() * frac(rng), a, s, dt, c);
      CHECK(next >= 0);
      CHECK(next <= c.veh());
    }
  }
}

TEST_CASE("property: formulations A and B agree bit for bit") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Profile arrivals = testing_support::random_piecewise(rng, 3000, 0.01);
    for (PqModel m : kAllPqModels) {
      RunConfig cfg = testing_support::sine_floor_config(pq(m), 0.01);
      cfg.arrivals = arrivals;
      const Trajectory a = simulate(cfg);
      cfg.model.formulation = Formulation::kB;
      const Trajectory b = simulate(cfg);
      REQUIRE(a.size() == b.size());
      CHECK(a.exact_queue == b.exact_queue);
      CHECK(a.final_queue == b.final_cum_in - b.final_cum_out);
    }
  }
}

TEST_CASE("property: larger arrivals never give a shorter queue") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> extra(0, 1000);
  for (int trial = 0; trial < 30; ++trial) {
    const Profile base = testing_support::random_piecewise(rng, 2000, 0.01);
    const auto& pw = std::get<Profile::PiecewiseConstant>(base.shape());
    std::vector<double> more = pw.rates;
    for (double& r : more) r += extra(rng);
    const Profile bigger = Profile::piecewise_constant(pw.breakpoints, more);
    for (PqModel m : kAllPqModels) {
      RunConfig cfg = testing_support::sine_floor_config(pq(m), 0.01);
      cfg.horizon = 3.0;
      cfg.arrivals = base;
      const Trajectory lo = simulate(cfg);
      cfg.arrivals = bigger;
      const Trajectory hi = simulate(cfg);
      for (std::size_t i = 0; i < lo.size(); ++i) CHECK(lo.exact_queue[i] <= hi.exact_queue[i]);
    }
  }
}
