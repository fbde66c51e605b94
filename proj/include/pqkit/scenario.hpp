#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pqkit/analytical.hpp"
#include "pqkit/link.hpp"
#include "pqkit/network.hpp"
#include "pqkit/profile.hpp"
#include "pqkit/simulation.hpp"

namespace pqkit {

/// A parsed scenario file. See docs/scenario.md for the JSON schema.
struct Scenario {
  std::string name = "scenario";
  std::vector<ModelVariant> models;
  Formulation formulation = Formulation::kA;
  Profile arrivals = Profile::constant(0.0);
  Profile service = Profile::constant(0.0);
  QueueSpec queue;
  std::optional<LinkParams> link;
  std::optional<TandemSpec> tandem;
  double dt = 0.0;
  double horizon = 0.0;
  std::optional<double> eps;
  std::vector<double> dt_list;
  /// Reported as "min_queue_after" when set.
  std::optional<double> min_after;
  std::filesystem::path output_dir = "out";
  bool unsafe = false;
};

/// Throws ParseError with a "source:line:col" or "field 'a.b'" location.
Scenario parse_scenario(std::string_view text, std::string_view source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

RunConfig run_config(const Scenario& sc, const ModelVariant& model, double dt);

/// Columns t, lambda, F, G, f, g; shortest round-trip number formatting.
void write_csv(std::ostream& os, const Trajectory& tr);
/// Reads what write_csv writes (exact_queue and final state left empty).
Trajectory read_csv(std::istream& is, double dt);

struct ModelResult {
  Trajectory trajectory;
  SummaryStats stats;
  std::optional<double> min_after;
};

struct RunReport {
  std::vector<ModelResult> models;
  /// distances[i][j] = sup-norm distance between models i and j, veh.
  std::vector<std::vector<double>> distances;
  double max_distance() const;
};

/// Runs every model of the scenario at `dt` (concurrently) and summarizes.
RunReport run_models(const Scenario& sc, double dt);

/// run_models plus one CSV per model and report.json in sc.output_dir.
RunReport run_scenario(const Scenario& sc);

struct ComparisonRow {
  double dt = 0.0;
  double max_distance = 0.0;
  double bound = 0.0;  // (max arrival + max service) * dt
};

/// Max pairwise sup-norm distance among `models` at each dt.
std::vector<ComparisonRow> compare_models(const Scenario& sc,
                                          const std::vector<ModelVariant>& models,
                                          const std::vector<double>& dts);

struct ConvergenceRow {
  std::string model;
  double dt = 0.0;
  double distance = 0.0;  // to the finest-dt run, on this row's grid
};

/// Self-convergence: each model at each dt against its own run at the
/// finest dt. Every dt must be an integer multiple of the finest one.
std::vector<ConvergenceRow> convergence_table(const Scenario& sc);

struct TandemReport {
  TandemRun run;
  std::vector<SummaryStats> stats;
};

/// Simulates sc.tandem and writes queueN.csv plus report.json.
TandemReport run_tandem_scenario(const Scenario& sc);

/// Closed-form Vickrey solution for the scenario's profiles; writes
/// vickrey_closed_form.csv (t, lambda, F, G, pi) and returns the solution.
VickreySolution run_vickrey_scenario(const Scenario& sc);

/// Renders the stationary state for `model` ("PQMk" or "eps-PQMk").
std::string solve_stationary(const ModelVariant& model, double arrival_rate,
                             double service_rate, const Capacity& capacity,
                             std::optional<double> eps);

std::string format_number(double v);

}  // namespace pqkit
