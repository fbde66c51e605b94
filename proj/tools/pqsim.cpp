// pqsim: scenario-driven front end for the pqkit models.
//
// Exit status: 0 success, 2 invalid input (parse or bound violation),
// 1 anything else.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqkit/error.hpp"
#include "pqkit/scenario.hpp"

namespace {

using namespace pqkit;

struct Overrides {
  std::optional<double> dt;
  std::optional<double> eps;
  std::optional<double> horizon;
  std::optional<std::string> out_dir;
  bool unsafe = false;
  std::vector<std::string> models;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--dt", o.dt, "time step (hr)")->check(CLI::PositiveNumber);
  cmd->add_option("--eps", o.eps, "relaxation time ε (hr)")->check(CLI::PositiveNumber);
  cmd->add_option("--horizon", o.horizon, "simulated horizon (hr)")->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_flag("--unsafe", o.unsafe, "skip well-definedness checks");
  cmd->add_option("--model", o.models, "model name (repeatable); replaces the scenario list");
}

Scenario load(const std::string& path, const Overrides& o) {
  Scenario sc = load_scenario(path);
  if (o.dt) sc.dt = *o.dt;
  if (o.eps) sc.eps = *o.eps;
  if (o.horizon) sc.horizon = *o.horizon;
  if (o.out_dir) sc.output_dir = *o.out_dir;
  if (o.unsafe) sc.unsafe = true;
  if (!o.models.empty()) {
    sc.models.clear();
    for (const auto& m : o.models) {
      auto v = parse_model(m, sc.formulation);
      if (!v) throw ParseError("--model: unknown model '" + m + "'");
      sc.models.push_back(*v);
    }
  }
  return sc;
}

std::string fmt(double v) { return format_number(v); }

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "-"; }

int cmd_simulate(const Scenario& sc) {
  const RunReport report = run_scenario(sc);
  for (const auto& m : report.models) {
    std::cout << m.trajectory.label << ": max λ=" << fmt(m.stats.max_queue)
              << " min λ after peak=" << fmt(m.stats.min_after_peak)
              << " first nonzero=" << fmt(m.stats.first_nonzero_time)
              << " vanish=" << fmt(m.stats.vanish_time);
    if (m.min_after) std::cout << " min λ after t=" << fmt(*sc.min_after) << "=" << fmt(*m.min_after);
    std::cout << '\n';
  }
  if (report.models.size() > 1) {
    std::cout << "max pairwise sup-norm distance: " << fmt(report.max_distance()) << " veh\n";
  }
  std::cout << "wrote " << sc.output_dir.string() << '\n';
  return 0;
}

int cmd_compare(const Scenario& sc) {
  const auto dts = sc.dt_list.empty() ? std::vector<double>{sc.dt} : sc.dt_list;
  const auto rows = compare_models(sc, sc.models, dts);
  std::cout << "dt,max_distance,bound\n";
  for (const auto& r : rows) {
    std::cout << fmt(r.dt) << ',' << fmt(r.max_distance) << ',' << fmt(r.bound) << '\n';
  }
  return 0;
}

int cmd_convergence(const Scenario& sc) {
  std::cout << "model,dt,distance_to_finest\n";
  for (const auto& r : convergence_table(sc)) {
    std::cout << r.model << ',' << fmt(r.dt) << ',' << fmt(r.distance) << '\n';
  }
  return 0;
}

int cmd_vickrey(const Scenario& sc) {
  const VickreySolution sol = run_vickrey_scenario(sc);
  const SummaryStats s = summarize(sol.time, sol.queue);
  std::cout << "closed form: max λ=" << fmt(s.max_queue)
            << " first nonzero=" << fmt(s.first_nonzero_time)
            << " vanish=" << fmt(s.vanish_time) << '\n'
            << "wrote " << (sc.output_dir / "vickrey_closed_form.csv").string() << '\n';
  return 0;
}

int cmd_tandem(const Scenario& sc) {
  const TandemReport report = run_tandem_scenario(sc);
  for (std::size_t i = 0; i < report.stats.size(); ++i) {
    const auto& s = report.stats[i];
    std::cout << report.run.queues[i].label << ": max λ=" << fmt(s.max_queue)
              << " first peak=" << fmt(s.first_peak_time) << " vanish=" << fmt(s.vanish_time)
              << " final λ=" << fmt(report.run.queues[i].final_queue.veh()) << '\n';
  }
  std::cout << "conservation residual: " << fmt(report.run.conservation_residual) << " veh\n";
  if (report.run.experimental) std::cout << "note: mixed-model tandem (experimental)\n";
  std::cout << "wrote " << sc.output_dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point queue and link model simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  Overrides o;
  auto scenario_cmd = [&](const char* name, const char* help) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("scenario", scenario_path, "scenario JSON file")->required();
    add_overrides(cmd, o);
    return cmd;
  };
  CLI::App* simulate = scenario_cmd("simulate", "run every model and write CSV + report.json");
  CLI::App* compare = scenario_cmd("compare", "max pairwise sup-norm distance per Δt");
  CLI::App* convergence = scenario_cmd("convergence", "distance of each model to its finest-Δt run");
  CLI::App* vickrey = scenario_cmd("vickrey", "closed-form infinite-capacity solution");
  CLI::App* tandem = scenario_cmd("tandem", "point queues in series");
  std::vector<double> dt_list;
  for (CLI::App* cmd : {compare, convergence}) {
    cmd->add_option("--dt-list", dt_list, "Δt values (hr); replaces the scenario's dt_list");
  }

  CLI::App* stationary = app.add_subcommand("stationary", "stationary state under constant rates");
  double arrival = 0.0;
  double service = 0.0;
  std::string capacity_text = "infinite";
  std::optional<double> eps;
  std::vector<std::string> models;
  stationary->add_option("--delta", arrival, "arrival rate (veh/hr)")->required()->check(CLI::NonNegativeNumber);
  stationary->add_option("--sigma", service, "service rate (veh/hr)")->required()->check(CLI::NonNegativeNumber);
  stationary->add_option("--capacity", capacity_text, "storage capacity (veh) or 'infinite'");
  stationary->add_option("--eps", eps, "relaxation time ε (hr) for eps-PQMk")->check(CLI::PositiveNumber);
  stationary->add_option("--model", models, "PQMk or eps-PQMk (repeatable; default all four)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*stationary) {
      Capacity cap = Capacity::infinite();
      if (capacity_text != "infinite") {
        try {
          cap = Capacity::finite(std::stod(capacity_text));
        } catch (const std::logic_error&) {
          throw ParseError("--capacity: expected a number or 'infinite'");
        }
      }
      if (models.empty()) {
        for (PqModel m : kAllPqModels) {
          models.push_back((eps ? "eps-" : "") + std::string(name(m)));
        }
      }
      for (const auto& text : models) {
        auto m = parse_model(text);
        if (!m) throw ParseError("--model: unknown model '" + text + "'");
        const std::string line = solve_stationary(*m, arrival, service, cap, eps);
        std::cout << text << ": " << line << '\n';
      }
      return 0;
    }
    Scenario sc = load(scenario_path, o);
    if (!dt_list.empty()) sc.dt_list = dt_list;
    if (*simulate) return cmd_simulate(sc);
    if (*compare) return cmd_compare(sc);
    if (*convergence) return cmd_convergence(sc);
    if (*vickrey) return cmd_vickrey(sc);
    if (*tandem) return cmd_tandem(sc);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedCase& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
