#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "pqkit/error.hpp"
#include "pqkit/scenario.hpp"

using namespace pqkit;
namespace fs = std::filesystem;

namespace {

const char* kSineFloor = R"({
  "models": ["PQM1", "PQM2", "PQM3", "PQM4"],
  "demand": {"type": "sine_floor", "amplitude": 2000, "floor": 1000},
  "supply": {"type": "constant", "rate": 1200},
  "queue": {"capacity": 200, "initial": 0},
  "dt": 0.01,
  "horizon": 2,
  "min_after": 1.8
})";

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("pqkit_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string parse_message(const std::string& text) {
  try {
    parse_scenario(text, "s.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse a full scenario") {
  const Scenario sc = parse_scenario(kSineFloor);
  CHECK(sc.models.size() == 4);
  CHECK(sc.queue.capacity.veh() == 200);
  CHECK(sc.dt == 0.01);
  CHECK(*sc.min_after == 1.8);
  CHECK(sc.arrivals.evaluate(0.5) == doctest::Approx(2000));
  CHECK(sc.service.evaluate(3) == 1200);
}

TEST_CASE("parse errors carry a location") {
  CHECK(parse_message("{\n  \"dt\": 0.01,\n  \"horizon\": \n}") .find("s.json:4:") == 0);
  const std::string bad_field = parse_message(R"({
  "models": ["PQM1"],
  "demand": {"type": "sine_floor", "amplitude": "big", "floor": 1000},
  "dt": 0.01, "horizon": 1
})");
  CHECK(bad_field.find("s.json:3") == 0);
  CHECK(bad_field.find("demand.amplitude") != std::string::npos);
  CHECK(parse_message(R"({"models": ["PQM9"], "demand": 1, "dt": 0.01, "horizon": 1})")
            .find("models[0]") != std::string::npos);
  CHECK(parse_message(R"({"models": ["PQM1"], "demand": 1, "dt": 0.01, "horizon": 1, "tyop": 2})")
            .find("unknown field") != std::string::npos);
  CHECK(parse_message(R"({"models": ["PQM1"], "demand": 1, "horizon": 1})").find("'dt'") !=
        std::string::npos);
  CHECK(parse_message(R"({"models": ["PQM1"], "demand": 1, "dt": 0.01, "horizon": 1,
    "queue": {"capacity": 10, "initial": 20}})")
            .find("queue") != std::string::npos);
}

TEST_CASE("validation errors name the bound") {
  Scenario sc = parse_scenario(R"({"models": ["PQM3"], "demand": 2000, "supply": 1200,
    "queue": {"capacity": 200}, "dt": 0.2, "horizon": 1})");
  sc.output_dir = scratch("bound");
  try {
    run_scenario(sc);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("PQM3-D requires Δt ≤ Λ/σ_max = 0.1667 hr") == 0);
  }
}

TEST_CASE("golden ceilings and floors through the scenario path") {
  Scenario sc = parse_scenario(kSineFloor);
  sc.output_dir = scratch("golden");
  const RunReport r = run_scenario(sc);
  CHECK(r.models[0].stats.max_queue == 200);
  CHECK(r.models[1].stats.max_queue == 188);
  CHECK(r.models[2].stats.max_queue == 188);
  CHECK(r.models[3].stats.max_queue == 200);
  CHECK(*r.models[1].min_after == 10);
  CHECK(*r.models[3].min_after == 10);
  CHECK(fs::exists(sc.output_dir / "PQM1.csv"));
  CHECK(fs::exists(sc.output_dir / "report.json"));
}

TEST_CASE("single-row output for a one-step horizon") {
  Scenario sc = parse_scenario(R"({"models": ["PQM2"], "demand": 0, "supply": 1200,
    "queue": {"capacity": 200, "initial": 37}, "dt": 0.01, "horizon": 0.01})");
  sc.output_dir = scratch("one_row");
  run_scenario(sc);
  const std::string csv = slurp(sc.output_dir / "PQM2.csv");
  CHECK(csv.rfind("t,lambda,F,G,f,g\n", 0) == 0);
  std::istringstream is(csv);
  const Trajectory tr = read_csv(is, sc.dt);
  REQUIRE(tr.size() == 1);
  CHECK(tr.queue[0] == 37);
  CHECK(tr.time[0] == 0);
}

TEST_CASE("csv round-trip reproduces the summary statistics exactly") {
  Scenario sc = parse_scenario(kSineFloor);
  sc.output_dir = scratch("roundtrip");
  const RunReport r = run_scenario(sc);
  for (const auto& m : r.models) {
    std::ifstream is(sc.output_dir / (m.trajectory.label + ".csv"));
    const Trajectory back = read_csv(is, sc.dt);
    CHECK(back.queue == m.trajectory.queue);
    CHECK(back.time == m.trajectory.time);
    CHECK(summarize(back) == m.stats);
  }
}

TEST_CASE("identical scenarios give byte-identical output") {
  Scenario sc = parse_scenario(kSineFloor);
  sc.output_dir = scratch("det_a");
  run_scenario(sc);
  const fs::path a = sc.output_dir;
  sc.output_dir = scratch("det_b");
  run_scenario(sc);
  for (const char* f : {"PQM1.csv", "PQM2.csv", "PQM3.csv", "PQM4.csv", "report.json"}) {
    CHECK(slurp(a / f) == slurp(sc.output_dir / f));
  }
}

TEST_CASE("model comparison") {
  const Scenario sc = parse_scenario(kSineFloor);
  const auto rows = compare_models(sc, sc.models, {0.01, 0.001, 0.0001});
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].max_distance <= rows[i].bound);
    if (i > 0) CHECK(rows[i].max_distance < rows[i - 1].max_distance);
  }
  CHECK(rows[0].max_distance / rows[1].max_distance == doctest::Approx(10).epsilon(0.2));
  CHECK(compare_models(sc, {sc.models[0]}, {0.01})[0].max_distance == 0);
}

TEST_CASE("epsilon models sit within eps times the rate span of the exact ones") {
  Scenario sc = parse_scenario(kSineFloor);
  sc.eps = 0.001;
  for (PqModel m : kAllPqModels) {
    const auto rows = compare_models(
        sc, {{Family::kPointQueue, m}, {Family::kEpsPointQueue, m}}, {0.0001});
    CHECK(rows[0].max_distance <= 0.001 * (2000 + 1200));
  }
}

TEST_CASE("self-convergence table") {
  Scenario sc = parse_scenario(kSineFloor);
  sc.dt_list = {0.01, 0.001, 0.0001};
  const auto rows = convergence_table(sc);
  CHECK(rows.size() == 12);
  sc.dt_list = {0.01, 0.003};
  CHECK_THROWS_AS(convergence_table(sc), ConfigError);
}

TEST_CASE("stationary rendering") {
  const Capacity cap = Capacity::finite(200);
  CHECK(solve_stationary({Family::kPointQueue, PqModel::kPqm1}, 2000, 1200, cap, {}) ==
        "full: λ=200, flux=1200");
  CHECK(solve_stationary({Family::kPointQueue, PqModel::kPqm2}, 1200, 1200, cap, {})
            .find("interval [0,200]") == 0);
  CHECK(solve_stationary({Family::kEpsPointQueue, PqModel::kPqm3}, 2000, 1200, cap, 0.001)
            .find("λ=198.8") == 0);
  CHECK_THROWS_AS(solve_stationary({Family::kEpsPointQueue, PqModel::kPqm3}, 2000, 1200, cap, {}),
                  ConfigError);
}

TEST_CASE("tandem scenario") {
  Scenario sc = parse_scenario(R"({
    "demand": {"type": "sine_floor", "amplitude": 2000, "floor": 1000},
    "supply": 1200,
    "tandem": {"queues": [{"capacity": "infinite"}, {"capacity": 200, "model": "PQM1"}]},
    "dt": 0.001, "horizon": 2})");
  sc.output_dir = scratch("tandem");
  const TandemReport r = run_tandem_scenario(sc);
  CHECK(r.run.queues.size() == 2);
  CHECK(r.stats[1].max_queue == 200);
  CHECK(fs::exists(sc.output_dir / "queue2.csv"));
}
