#include <doctest.h>

#include <cmath>

#include "../support.hpp"
#include "pqkit/error.hpp"
#include "pqkit/link_models.hpp"
#include "pqkit/simulation.hpp"

using namespace pqkit;

namespace {

const LinkParams kUnitLink{1, 1, 60, 20, 150};  // storage 150, T1 = 1/60, T3 = 1/15

Volume V(double v) { return Volume::from_veh(v); }

}  // namespace

TEST_CASE("link queue model demand and supply") {
  LinkRates r = lqm_demand_supply(0, kUnitLink);
  CHECK(r.demand == 0);
  CHECK(r.supply == doctest::Approx(2250));
  r = lqm_demand_supply(150, kUnitLink);
  CHECK(r.demand == doctest::Approx(2250));
  CHECK(r.supply == 0);
  r = lqm_demand_supply(75, kUnitLink);
  CHECK(r.demand == doctest::Approx(2250));
  CHECK(r.supply == doctest::Approx(1500));
  CHECK_THROWS_AS(lqm_demand_supply(151, kUnitLink), DomainError);
  CHECK_THROWS_AS(lqm_demand_supply(-1, kUnitLink), DomainError);
}

TEST_CASE("link queue model steps") {
  LqmLink empty(kUnitLink, V(0), 0.01);
  const Transfer t0 = empty.step(0, 1200);
  CHECK(t0.inflow == V(0));
  CHECK(t0.outflow == V(0));
  CHECK(empty.occupancy() == V(0));

  for (Formulation f : {Formulation::kA, Formulation::kB}) {
    LqmLink link(kUnitLink, V(75), 0.01, f);
    const Transfer t = link.step(1000, 1200);
    CHECK(t.inflow.veh() == doctest::Approx(10));
    CHECK(t.outflow.veh() == doctest::Approx(12));
    CHECK(link.occupancy().veh() == doctest::Approx(73));
  }
  CHECK_THROWS_AS(LqmLink(kUnitLink, V(0), 0.02), ConfigError);
}

TEST_CASE("link transmission model at t = 0") {
  LtmLink empty(kUnitLink, V(0), 0.001);
  StepVolumes ds = empty.demand_supply();
  CHECK(ds.demand == V(0));
  CHECK(ds.supply->veh() == doctest::Approx(150.0 / (1.0 / 15) * 0.001));
  LtmLink full(kUnitLink, V(150), 0.001);
  CHECK(full.demand_supply().supply->veh() == doctest::Approx(0).epsilon(1e-12));
  CHECK_THROWS_AS(LtmLink(kUnitLink, V(0), 0.02), ConfigError);
}

TEST_CASE("link transmission model: nothing leaves before the free-flow time") {
  const double dt = 0.001;
  LtmLink link(kUnitLink, V(0), dt);
  double t = 0;
  double in = 0;
  while (t + dt < 1.0 / 60 - 1e-12) {
    const Transfer tr = link.step(1000, 1200);
    CHECK(tr.outflow == V(0));
    CHECK(tr.inflow.veh() == doctest::Approx(1.0));
    in += tr.inflow.veh();
    t += dt;
    CHECK(link.occupancy().veh() == doctest::Approx(in));
  }
  // Once the first vehicles arrive at the downstream end they leave at the arrival rate.
  for (int i = 0; i < 40; ++i) link.step(1000, 1200);
  CHECK(link.step(1000, 1200).outflow.veh() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("property: link models conserve vehicles and stay within storage") {
  for (Family fam : {Family::kLtm, Family::kLqm}) {
    for (Formulation f : {Formulation::kA, Formulation::kB}) {
      RunConfig cfg = testing_support::sine_floor_config({fam, PqModel::kPqm1, f}, 1e-3);
      cfg.queue.capacity = Capacity::infinite();
      cfg.link = LinkParams{0.2, 1, 60, 20, 150};  // storage 30
      cfg.service = Profile::constant(900);
      const Trajectory tr = simulate(cfg);
      for (std::size_t i = 0; i < tr.size(); ++i) {
        CHECK(tr.queue[i] >= 0);
        CHECK(tr.queue[i] <= 30 + 1e-9);
        CHECK(tr.cum_in[i] - tr.cum_out[i] == doctest::Approx(tr.queue[i]).epsilon(1e-12));
        if (i > 0) {
          CHECK(tr.cum_in[i] >= tr.cum_in[i - 1]);
          CHECK(tr.cum_out[i] >= tr.cum_out[i - 1]);
        }
      }
    }
  }
}

TEST_CASE("property: link queue model increments are Lipschitz-bounded") {
  RunConfig cfg = testing_support::sine_floor_config({Family::kLqm}, 1e-3);
  cfg.queue.capacity = Capacity::infinite();
  cfg.link = LinkParams{0.2, 1, 60, 20, 150};
  const Trajectory tr = simulate(cfg);
  const double cap_flow = cfg.link->capacity_flow();
  const double bound = (std::max(2000.0, cap_flow) + cap_flow) * cfg.dt;
  for (std::size_t i = 1; i < tr.size(); ++i) {
    CHECK(std::fabs(tr.queue[i] - tr.queue[i - 1]) <= bound + 1e-9);
  }
}

TEST_CASE("property: short links converge to point queues") {
  // Fixed storage 200: N = 200 / (L K).
  const double dt = 1e-4;
  for (auto [link_family, pq_model] : {std::pair{Family::kLqm, PqModel::kPqm2},
                                       std::pair{Family::kLtm, PqModel::kPqm1}}) {
    const Trajectory point = simulate(testing_support::sine_floor_config(testing_support::pq(pq_model), dt));
    double previous = INFINITY;
    for (double length : {1.0, 0.1, 0.01}) {
      RunConfig cfg = testing_support::sine_floor_config({link_family}, dt);
      cfg.queue.capacity = Capacity::infinite();
      cfg.link = LinkParams{length, 200 / (length * 150), 60, 20, 150};
      const double d = sup_distance(simulate(cfg), point);
      CHECK(d < previous);
      previous = d;
    }
  }
}
