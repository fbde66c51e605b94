#include "pqkit/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <iterator>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pqkit/error.hpp"

namespace pqkit {
namespace {

using nlohmann::json;

// Walks a parsed document while remembering where it is, so every
// complaint names the offending field and, when it can be found, its line.
class Reader {
 public:
  Reader(std::string_view text, std::string_view source) : text_(text), source_(source) {}

  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    std::string msg(source_);
    if (auto line = line_of(field)) msg += ":" + std::to_string(*line);
    msg += ": field '" + field + "': " + what;
    throw ParseError(msg);
  }

  const json& require(const json& obj, const std::string& path, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "missing");
    return *it;
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) fail(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(field, "must be finite");
    return d;
  }

  double positive(const json& v, const std::string& field) const {
    const double d = number(v, field);
    if (!(d > 0.0)) fail(field, "must be positive");
    return d;
  }

  std::string string(const json& v, const std::string& field) const {
    if (!v.is_string()) fail(field, "expected a string");
    return v.get<std::string>();
  }

  void only_keys(const json& obj, const std::string& path,
                 std::initializer_list<std::string_view> allowed) const {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
        fail(join(path, it.key()), "unknown field");
      }
    }
  }

  static std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
  }

 private:
  // Line of the first occurrence of the field's last key, 1-based.
  std::optional<std::size_t> line_of(const std::string& field) const {
    std::string key = field.substr(field.find_last_of('.') + 1);
    if (auto b = key.find('['); b != std::string::npos) key.resize(b);
    const auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) return std::nullopt;
    return 1 + std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(pos), '\n');
  }

  std::string_view text_;
  std::string_view source_;
};

std::vector<double> number_list(const Reader& r, const json& v, const std::string& field) {
  if (!v.is_array()) r.fail(field, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(r.number(v[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Profile parse_profile(const Reader& r, const json& v, const std::string& path) {
  if (v.is_number()) return Profile::constant(r.number(v, path));
  if (!v.is_object()) r.fail(path, "expected a profile object or a number");
  const std::string type = r.string(r.require(v, path, "type"), path + ".type");
  try {
    if (type == "constant") {
      r.only_keys(v, path, {"type", "rate"});
      return Profile::constant(r.number(r.require(v, path, "rate"), path + ".rate"));
    }
    if (type == "piecewise_constant") {
      r.only_keys(v, path, {"type", "breakpoints", "rates"});
      return Profile::piecewise_constant(
          number_list(r, r.require(v, path, "breakpoints"), path + ".breakpoints"),
          number_list(r, r.require(v, path, "rates"), path + ".rates"));
    }
    if (type == "sine_floor") {
      r.only_keys(v, path, {"type", "amplitude", "floor"});
      return Profile::sine_floor(r.number(r.require(v, path, "amplitude"), path + ".amplitude"),
                                 r.number(r.require(v, path, "floor"), path + ".floor"));
    }
  } catch (const DomainError& e) {
    r.fail(path, e.what());
  }
  r.fail(path + ".type", "unknown profile type '" + type + "'");
}

Capacity parse_capacity(const Reader& r, const json& v, const std::string& field) {
  if (v.is_string() && v.get<std::string>() == "infinite") return Capacity::infinite();
  try {
    return Capacity::finite(r.number(v, field));
  } catch (const DomainError& e) {
    r.fail(field, e.what());
  }
}

Volume parse_initial(const Reader& r, const json& v, const std::string& field) {
  const double d = r.number(v, field);
  if (d < 0.0) r.fail(field, "must be non-negative");
  return Volume::from_veh(d);
}

QueueSpec parse_queue(const Reader& r, const json& v, const std::string& path) {
  r.only_keys(v, path, {"capacity", "initial"});
  QueueSpec q;
  if (v.contains("capacity")) q.capacity = parse_capacity(r, v["capacity"], path + ".capacity");
  if (v.contains("initial")) q.initial = parse_initial(r, v["initial"], path + ".initial");
  try {
    q.validate();
  } catch (const DomainError& e) {
    r.fail(path, e.what());
  }
  return q;
}

LinkParams parse_link(const Reader& r, const json& v, const std::string& path) {
  r.only_keys(v, path, {"length", "lanes", "free_speed", "wave_speed", "jam_density"});
  auto get = [&](const char* key) {
    return r.positive(r.require(v, path, key), Reader::join(path, key));
  };
  return LinkParams{get("length"), get("lanes"), get("free_speed"), get("wave_speed"),
                    get("jam_density")};
}

Formulation parse_formulation(const Reader& r, const json& v) {
  const std::string s = r.string(v, "formulation");
  if (s == "A") return Formulation::kA;
  if (s == "B") return Formulation::kB;
  r.fail("formulation", "expected \"A\" or \"B\"");
}

PqModel parse_pq(const Reader& r, const json& v, const std::string& field) {
  const std::string s = r.string(v, field);
  auto m = parse_pq_model(s);
  if (!m) r.fail(field, "unknown point queue model '" + s + "'");
  return *m;
}

TandemSpec parse_tandem(const Reader& r, const json& v, const std::string& path) {
  r.only_keys(v, path, {"queues"});
  const json& qs = r.require(v, path, "queues");
  if (!qs.is_array() || qs.empty()) r.fail(path + ".queues", "expected a non-empty array");
  TandemSpec spec;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const std::string qp = path + ".queues[" + std::to_string(i) + "]";
    r.only_keys(qs[i], qp, {"capacity", "initial", "model"});
    TandemQueue q;
    if (qs[i].contains("model")) q.model = parse_pq(r, qs[i]["model"], qp + ".model");
    json sub = qs[i];
    sub.erase("model");
    q.spec = parse_queue(r, sub, qp);
    spec.queues.push_back(q);
  }
  return spec;
}

void write_number(std::ostream& os, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, res.ptr - buf);
}

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json stats_json(const SummaryStats& s) {
  return {{"max_queue", s.max_queue},
          {"first_peak_time", optional_json(s.first_peak_time)},
          {"min_queue_after_peak", optional_json(s.min_after_peak)},
          {"first_nonzero_time", optional_json(s.first_nonzero_time)},
          {"dissipation_start", optional_json(s.dissipation_start)},
          {"vanish_time", optional_json(s.vanish_time)}};
}

std::string csv_name(const std::string& label) {
  std::string out;
  for (char c : label) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out + ".csv";
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << contents;
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& tr) {
  std::ostringstream os;
  write_csv(os, tr);
  write_file(path, os.str());
}

std::vector<Trajectory> run_all(const Scenario& sc, const std::vector<ModelVariant>& models,
                                double dt) {
  // Validate up front so a bad model fails before any thread starts.
  std::vector<RunConfig> cfgs;
  for (const auto& m : models) {
    cfgs.push_back(run_config(sc, m, dt));
    validate(cfgs.back());
  }
  std::vector<std::future<Trajectory>> jobs;
  for (const auto& cfg : cfgs) {
    jobs.push_back(std::async(std::launch::async, [&cfg] { return simulate(cfg); }));
  }
  std::vector<Trajectory> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

double max_pairwise(const std::vector<Trajectory>& runs) {
  double m = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size(); ++j) m = std::max(m, sup_distance(runs[i], runs[j]));
  }
  return m;
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto byte = std::min<std::size_t>(e.byte, text.size());
    const auto head = text.substr(0, byte > 0 ? byte - 1 : 0);
    const auto line = 1 + std::count(head.begin(), head.end(), '\n');
    const auto nl = head.find_last_of('\n');
    const auto col = nl == std::string_view::npos ? head.size() + 1 : head.size() - nl;
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ":" +
                     std::to_string(col) + ": malformed JSON");
  }
  const Reader r(text, source);
  r.only_keys(doc, "",
              {"name", "models", "model", "formulation", "demand", "supply", "queue", "link",
               "tandem", "dt", "horizon", "eps", "dt_list", "min_after", "output_dir",
               "unsafe"});
  Scenario sc;
  if (doc.contains("name")) sc.name = r.string(doc["name"], "name");
  if (doc.contains("formulation")) sc.formulation = parse_formulation(r, doc["formulation"]);

  auto add_model = [&](const json& v, const std::string& field) {
    const std::string s = r.string(v, field);
    auto m = parse_model(s, sc.formulation);
    if (!m) r.fail(field, "unknown model '" + s + "'");
    sc.models.push_back(*m);
  };
  if (doc.contains("model")) add_model(doc["model"], "model");
  if (doc.contains("models")) {
    const json& ms = doc["models"];
    if (!ms.is_array()) r.fail("models", "expected an array of model names");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      add_model(ms[i], "models[" + std::to_string(i) + "]");
    }
  }

  sc.arrivals = parse_profile(r, r.require(doc, "", "demand"), "demand");
  if (doc.contains("supply")) sc.service = parse_profile(r, doc["supply"], "supply");
  if (doc.contains("queue")) sc.queue = parse_queue(r, doc["queue"], "queue");
  if (doc.contains("link")) sc.link = parse_link(r, doc["link"], "link");
  if (doc.contains("tandem")) {
    sc.tandem = parse_tandem(r, doc["tandem"], "tandem");
    sc.tandem->arrivals = sc.arrivals;
    sc.tandem->service = sc.service;
    sc.tandem->formulation = sc.formulation;
  }
  sc.dt = r.positive(r.require(doc, "", "dt"), "dt");
  sc.horizon = r.positive(r.require(doc, "", "horizon"), "horizon");
  if (doc.contains("eps")) sc.eps = r.positive(doc["eps"], "eps");
  if (doc.contains("dt_list")) {
    sc.dt_list = number_list(r, doc["dt_list"], "dt_list");
    for (std::size_t i = 0; i < sc.dt_list.size(); ++i) {
      if (!(sc.dt_list[i] > 0.0)) r.fail("dt_list[" + std::to_string(i) + "]", "must be positive");
    }
  }
  if (doc.contains("min_after")) sc.min_after = r.number(doc["min_after"], "min_after");
  if (doc.contains("output_dir")) sc.output_dir = r.string(doc["output_dir"], "output_dir");
  if (doc.contains("unsafe")) {
    if (!doc["unsafe"].is_boolean()) r.fail("unsafe", "expected true or false");
    sc.unsafe = doc["unsafe"].get<bool>();
  }
  if (sc.models.empty() && !sc.tandem) r.fail("models", "no model selected");
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ParseError(path.string() + ": cannot open scenario file");
  const std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_scenario(text, path.string());
}

RunConfig run_config(const Scenario& sc, const ModelVariant& model, double dt) {
  RunConfig cfg;
  cfg.model = model;
  cfg.arrivals = sc.arrivals;
  cfg.service = sc.service;
  cfg.queue = sc.queue;
  cfg.link = sc.link;
  cfg.dt = dt;
  cfg.horizon = sc.horizon;
  cfg.eps = sc.eps;
  cfg.safety = sc.unsafe ? Safety::kUnchecked : Safety::kChecked;
  return cfg;
}

void write_csv(std::ostream& os, const Trajectory& tr) {
  os << "t,lambda,F,G,f,g\n";
  for (std::size_t i = 0; i < tr.size(); ++i) {
    for (double v : {tr.time[i], tr.queue[i], tr.cum_in[i], tr.cum_out[i], tr.inflow[i]}) {
      write_number(os, v);
      os << ',';
    }
    write_number(os, tr.outflow[i]);
    os << '\n';
  }
}

Trajectory read_csv(std::istream& is, double dt) {
  Trajectory tr;
  tr.dt = dt;
  std::string line;
  if (!std::getline(is, line) || line != "t,lambda,F,G,f,g") {
    throw ParseError("csv: unexpected header");
  }
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    double v[6];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int k = 0; k < 6; ++k) {
      auto res = std::from_chars(p, end, v[k]);
      if (res.ec != std::errc() || (k < 5 && (res.ptr == end || *res.ptr != ','))) {
        throw ParseError("csv:" + std::to_string(row) + ": malformed row");
      }
      p = res.ptr + (k < 5 ? 1 : 0);
    }
    if (p != end) throw ParseError("csv:" + std::to_string(row) + ": trailing data");
    tr.time.push_back(v[0]);
    tr.queue.push_back(v[1]);
    tr.cum_in.push_back(v[2]);
    tr.cum_out.push_back(v[3]);
    tr.inflow.push_back(v[4]);
    tr.outflow.push_back(v[5]);
  }
  return tr;
}

double RunReport::max_distance() const {
  double m = 0.0;
  for (const auto& row : distances) {
    for (double d : row) m = std::max(m, d);
  }
  return m;
}

RunReport run_models(const Scenario& sc, double dt) {
  RunReport report;
  auto runs = run_all(sc, sc.models, dt);
  const std::size_t n = runs.size();
  report.distances.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      report.distances[i][j] = report.distances[j][i] = sup_distance(runs[i], runs[j]);
    }
  }
  for (auto& tr : runs) {
    ModelResult m;
    m.stats = summarize(tr);
    if (sc.min_after) m.min_after = min_queue_after(tr, *sc.min_after);
    m.trajectory = std::move(tr);
    report.models.push_back(std::move(m));
  }
  return report;
}

RunReport run_scenario(const Scenario& sc) {
  RunReport report = run_models(sc, sc.dt);
  std::filesystem::create_directories(sc.output_dir);
  json models = json::array();
  for (const auto& m : report.models) {
    const std::string file = csv_name(m.trajectory.label);
    write_trajectory(sc.output_dir / file, m.trajectory);
    json entry = {{"model", m.trajectory.label},
                  {"csv", file},
                  {"rows", m.trajectory.size()},
                  {"stats", stats_json(m.stats)},
                  {"final_queue", m.trajectory.final_queue.veh()}};
    if (sc.min_after) {
      entry["min_queue_after"] = {{"t", *sc.min_after}, {"value", optional_json(m.min_after)}};
    }
    models.push_back(std::move(entry));
  }
  json distances = json::array();
  for (std::size_t i = 0; i < report.models.size(); ++i) {
    for (std::size_t j = i + 1; j < report.models.size(); ++j) {
      distances.push_back({{"a", report.models[i].trajectory.label},
                           {"b", report.models[j].trajectory.label},
                           {"sup_norm", report.distances[i][j]}});
    }
  }
  const json doc = {{"scenario", sc.name},
                    {"dt", sc.dt},
                    {"horizon", sc.horizon},
                    {"eps", optional_json(sc.eps)},
                    {"unsafe", sc.unsafe},
                    {"models", models},
                    {"distances", distances}};
  write_file(sc.output_dir / "report.json", doc.dump(2) + "\n");
  return report;
}

std::vector<ComparisonRow> compare_models(const Scenario& sc,
                                          const std::vector<ModelVariant>& models,
                                          const std::vector<double>& dts) {
  const double peak = sc.arrivals.max_rate() + sc.service.max_rate();
  std::vector<ComparisonRow> rows;
  for (double dt : dts) {
    rows.push_back({dt, max_pairwise(run_all(sc, models, dt)), peak * dt});
  }
  return rows;
}

std::vector<ConvergenceRow> convergence_table(const Scenario& sc) {
  std::vector<double> dts = sc.dt_list.empty() ? std::vector<double>{sc.dt} : sc.dt_list;
  const double finest = *std::min_element(dts.begin(), dts.end());
  std::vector<long long> ratios;
  for (double dt : dts) {
    const double ratio = dt / finest;
    const double whole = std::round(ratio);
    if (std::fabs(ratio - whole) > 1e-9 * whole) {
      throw ConfigError("convergence Δt " + format_number(dt) +
                        " is not a multiple of the finest Δt " + format_number(finest));
    }
    ratios.push_back(static_cast<long long>(whole));
  }
  const auto reference = run_all(sc, sc.models, finest);
  std::vector<ConvergenceRow> rows;
  for (std::size_t k = 0; k < dts.size(); ++k) {
    const auto runs = ratios[k] == 1 ? reference : run_all(sc, sc.models, dts[k]);
    for (std::size_t m = 0; m < runs.size(); ++m) {
      const Trajectory& fine = reference[m];
      double d = 0.0;
      for (std::size_t i = 0; i < runs[m].size(); ++i) {
        const std::size_t j = i * static_cast<std::size_t>(ratios[k]);
        if (j >= fine.size()) break;
        d = std::max(d, std::fabs(runs[m].queue[i] - fine.queue[j]));
      }
      rows.push_back({runs[m].label, dts[k], d});
    }
  }
  return rows;
}

TandemReport run_tandem_scenario(const Scenario& sc) {
  if (!sc.tandem) throw ConfigError("scenario has no tandem section");
  TandemReport report;
  report.run = simulate_tandem(*sc.tandem, sc.dt, sc.horizon,
                               sc.unsafe ? Safety::kUnchecked : Safety::kChecked);
  std::filesystem::create_directories(sc.output_dir);
  json queues = json::array();
  for (std::size_t i = 0; i < report.run.queues.size(); ++i) {
    const Trajectory& tr = report.run.queues[i];
    report.stats.push_back(summarize(tr));
    const std::string file = tr.label + ".csv";
    write_trajectory(sc.output_dir / file, tr);
    queues.push_back({{"queue", i + 1},
                      {"model", std::string(name(sc.tandem->queues[i].model))},
                      {"capacity", sc.tandem->queues[i].spec.capacity.is_finite()
                                       ? json(sc.tandem->queues[i].spec.capacity.veh())
                                       : json("infinite")},
                      {"csv", file},
                      {"stats", stats_json(report.stats.back())},
                      {"final_queue", tr.final_queue.veh()}});
  }
  const json doc = {{"scenario", sc.name},
                    {"dt", sc.dt},
                    {"horizon", sc.horizon},
                    {"experimental", report.run.experimental},
                    {"conservation_residual", report.run.conservation_residual},
                    {"queues", queues}};
  write_file(sc.output_dir / "report.json", doc.dump(2) + "\n");
  return report;
}

VickreySolution run_vickrey_scenario(const Scenario& sc) {
  if (sc.queue.capacity.is_finite()) {
    throw ConfigError("closed-form Vickrey solution needs infinite capacity");
  }
  VickreySolution sol =
      vickrey_closed_form(sc.arrivals, sc.service, sc.dt, sc.horizon, sc.queue.initial.veh());
  std::filesystem::create_directories(sc.output_dir);
  std::ostringstream os;
  os << "t,lambda,F,G,pi\n";
  for (std::size_t i = 0; i < sol.time.size(); ++i) {
    for (double v : {sol.time[i], sol.queue[i], sol.cum_in[i], sol.cum_out[i]}) {
      write_number(os, v);
      os << ',';
    }
    if (sol.queueing_time) write_number(os, (*sol.queueing_time)[i]);
    os << '\n';
  }
  write_file(sc.output_dir / "vickrey_closed_form.csv", os.str());
  return sol;
}

std::string solve_stationary(const ModelVariant& model, double arrival_rate,
                             double service_rate, const Capacity& capacity,
                             std::optional<double> eps) {
  if (model.family == Family::kPointQueue) {
    return render(stationary_exact(model.pq, arrival_rate, service_rate, capacity), capacity);
  }
  if (model.family == Family::kEpsPointQueue) {
    if (!eps) throw ConfigError(model_name(model) + " requires ε");
    return render(stationary_eps(model.pq, arrival_rate, service_rate, capacity, *eps),
                  capacity);
  }
  throw UnsupportedCase("stationary solver covers PQM1-4 and eps-PQM1-4 only");
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace pqkit
