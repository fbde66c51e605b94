#include "pqkit/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "pqkit/approx.hpp"
#include "pqkit/error.hpp"
#include "pqkit/kernels/kernels.hpp"
#include "pqkit/link_models.hpp"

namespace pqkit {
namespace {

class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual Transfer step(double arrival_rate, double service_rate) = 0;
  virtual Volume queue() const = 0;
  virtual Volume cum_in() const = 0;
  virtual Volume cum_out() const = 0;
};

// Point-queue families share a PqState and differ only in the step rule.
class PointStepper final : public Stepper {
 public:
  PointStepper(const RunConfig& cfg) : cfg_(cfg), state_(PqState::initial(cfg.queue.initial)) {}

  Transfer step(double arrival_rate, double service_rate) override {
    const double dt = cfg_.dt;
    const Volume arrivals = volume_over(arrival_rate, dt);
    const Volume service = volume_over(service_rate, dt);
    const PqVariant variant{cfg_.model.pq, cfg_.model.formulation};
    switch (cfg_.model.family) {
      case Family::kPointQueue: {
        auto r = step_pq_volumes(variant, state_, arrivals, service, dt, cfg_.queue.capacity,
                                 cfg_.safety);
        state_ = r.next;
        return r.transfer;
      }
      case Family::kEpsPointQueue: {
        auto r = step_eps(variant, state_, arrival_rate, service_rate, {*cfg_.eps, dt},
                          cfg_.queue.capacity, cfg_.safety);
        state_ = r.next;
        return r.transfer;
      }
      default:
        break;
    }
    // Infinite-capacity special cases: inflow is always the full arrival volume.
    const Volume q = current();
    Volume next;
    if (cfg_.model.family == Family::kVickrey) {
      next = step_vickrey(q, arrivals, service);
    } else if (cfg_.model.family == Family::kAlpha) {
      next = alpha_model_step(q, arrivals, service, dt / *cfg_.eps);
    } else {
      next = eps_model_step(q, arrivals, service, dt / *cfg_.eps);
    }
    const Transfer tr{arrivals, q + arrivals - next};
    state_.cum_in += tr.inflow;
    state_.cum_out += tr.outflow;
    // B: G(t+dt) = G(t) + outflow, read back as F - G; A: advance q directly.
    state_.queue = cfg_.model.formulation == Formulation::kA ? next
                                                               : state_.cum_in - state_.cum_out;
    state_.time += dt;
    return tr;
  }

  Volume queue() const override { return state_.queue; }
  Volume cum_in() const override { return state_.cum_in; }
  Volume cum_out() const override { return state_.cum_out; }

 private:
  Volume current() const {
    return cfg_.model.formulation == Formulation::kA ? state_.queue
                                                     : state_.cum_in - state_.cum_out;
  }
  const RunConfig& cfg_;
  PqState state_;
};

template <class Link>
class LinkStepper final : public Stepper {
 public:
  LinkStepper(const RunConfig& cfg)
      : link_(*cfg.link, cfg.queue.initial, cfg.dt, cfg.model.formulation) {}
  Transfer step(double a, double s) override { return link_.step(a, s); }
  Volume queue() const override { return link_.occupancy(); }
  Volume cum_in() const override { return link_.cum_in(); }
  Volume cum_out() const override { return link_.cum_out(); }

 private:
  Link link_;
};

std::unique_ptr<Stepper> make_stepper(const RunConfig& cfg) {
  switch (cfg.model.family) {
    case Family::kLtm: return std::make_unique<LinkStepper<LtmLink>>(cfg);
    case Family::kLqm: return std::make_unique<LinkStepper<LqmLink>>(cfg);
    default: return std::make_unique<PointStepper>(cfg);
  }
}

}  // namespace

std::string model_name(const ModelVariant& m) {
  switch (m.family) {
    case Family::kPointQueue: return std::string(name(m.pq));
    case Family::kEpsPointQueue: return "eps-" + std::string(name(m.pq));
    case Family::kLtm: return "LTM";
    case Family::kLqm: return "LQM";
    case Family::kVickrey: return "vickrey";
    case Family::kAlpha: return "alpha";
    case Family::kEpsModel: return "eps-model";
  }
  return "?";
}

std::optional<ModelVariant> parse_model(std::string_view text, Formulation formulation) {
  ModelVariant m;
  m.formulation = formulation;
  if (auto pq = parse_pq_model(text)) {
    m.family = Family::kPointQueue;
    m.pq = *pq;
    return m;
  }
  if (text.starts_with("eps-")) {
    if (auto pq = parse_pq_model(text.substr(4))) {
      m.family = Family::kEpsPointQueue;
      m.pq = *pq;
      return m;
    }
  }
  if (text == "LTM") m.family = Family::kLtm;
  else if (text == "LQM") m.family = Family::kLqm;
  else if (text == "vickrey") m.family = Family::kVickrey;
  else if (text == "alpha") m.family = Family::kAlpha;
  else if (text == "eps-model") m.family = Family::kEpsModel;
  else return std::nullopt;
  return m;
}

bool needs_link(const ModelVariant& m) {
  return m.family == Family::kLtm || m.family == Family::kLqm;
}

bool needs_eps(const ModelVariant& m) {
  return m.family == Family::kEpsPointQueue || m.family == Family::kAlpha ||
         m.family == Family::kEpsModel;
}

bool needs_infinite_capacity(const ModelVariant& m) {
  return m.family == Family::kVickrey || m.family == Family::kAlpha ||
         m.family == Family::kEpsModel;
}

long long step_count(double dt, double horizon) {
  // Tolerate horizons that are a multiple of dt up to rounding.
  return static_cast<long long>(std::ceil(horizon / dt - 1e-9));
}

void validate(const RunConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw ConfigError("Δt must be positive");
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
    throw ConfigError("horizon must be positive");
  }
  try {
    cfg.queue.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (needs_eps(cfg.model) && !cfg.eps) {
    throw ConfigError(model_name(cfg.model) + " requires ε");
  }
  if (needs_infinite_capacity(cfg.model) && cfg.queue.capacity.is_finite()) {
    throw ConfigError(model_name(cfg.model) + " is defined for infinite capacity only");
  }
  if (needs_link(cfg.model)) {
    if (!cfg.link) throw ConfigError(model_name(cfg.model) + " requires link parameters");
    try {
      cfg.link->validate();
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    if (cfg.queue.initial.veh() > cfg.link->storage_capacity()) {
      throw ConfigError("initial occupancy exceeds link storage capacity N·L·K");
    }
  }
  if (cfg.eps && !(*cfg.eps > 0.0)) throw ConfigError("ε must be positive");

  if (cfg.safety == Safety::kUnchecked) return;

  const double max_in = cfg.arrivals.max_rate();
  const double max_out = cfg.service.max_rate();
  switch (cfg.model.family) {
    case Family::kPointQueue:
      require_well_defined(cfg.model.pq, max_in, max_out, cfg.queue.capacity, cfg.dt);
      break;
    case Family::kEpsPointQueue:
      require_eps_well_defined(cfg.model.pq, max_in, max_out, cfg.queue.capacity,
                               {*cfg.eps, cfg.dt});
      break;
    case Family::kAlpha:
    case Family::kEpsModel:
      EpsilonConfig{*cfg.eps, cfg.dt}.validate();
      break;
    case Family::kLtm:
    case Family::kLqm: {
      const auto times = cfg.link->traverse_times();
      const double bound = std::min(times.free_flow, times.wave);
      if (cfg.dt > bound) {
        throw ConfigError(model_name(cfg.model) + " requires Δt ≤ min{T1, T2} = " +
                          std::to_string(bound) + " hr");
      }
      break;
    }
    case Family::kVickrey:
      break;
  }
}

void Trajectory::reserve(std::size_t n) {
  for (auto* v : {&time, &queue, &cum_in, &cum_out, &inflow, &outflow}) v->reserve(n);
  for (auto* v : {&exact_queue, &exact_cum_in, &exact_cum_out}) v->reserve(n);
}

void Trajectory::push(double t, Volume q, Volume in, Volume out, const Transfer& step) {
  time.push_back(t);
  queue.push_back(q.veh());
  cum_in.push_back(in.veh());
  cum_out.push_back(out.veh());
  inflow.push_back(step.inflow.veh() / dt);
  outflow.push_back(step.outflow.veh() / dt);
  exact_queue.push_back(q);
  exact_cum_in.push_back(in);
  exact_cum_out.push_back(out);
}

Trajectory simulate(const RunConfig& cfg) {
  validate(cfg);
  Trajectory tr;
  tr.label = model_name(cfg.model);
  tr.dt = cfg.dt;
  const long long n = step_count(cfg.dt, cfg.horizon);
  tr.reserve(static_cast<std::size_t>(n));
  auto stepper = make_stepper(cfg);
  for (long long i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * cfg.dt;
    const Volume q = stepper->queue();
    const Volume in = stepper->cum_in();
    const Volume out = stepper->cum_out();
    const Transfer step = stepper->step(cfg.arrivals.evaluate(t), cfg.service.evaluate(t));
    tr.push(t, q, in, out, step);
  }
  tr.final_queue = stepper->queue();
  tr.final_cum_in = stepper->cum_in();
  tr.final_cum_out = stepper->cum_out();
  return tr;
}

SummaryStats summarize(std::span<const double> time, std::span<const double> queue) {
  SummaryStats s;
  if (queue.empty()) return s;
  const auto peak = std::max_element(queue.begin(), queue.end());
  const std::size_t p = static_cast<std::size_t>(peak - queue.begin());
  s.max_queue = *peak;
  s.first_peak_time = time[p];
  if (p + 1 < queue.size()) {
    s.min_after_peak = *std::min_element(queue.begin() + static_cast<std::ptrdiff_t>(p) + 1,
                                         queue.end());
  }
  for (std::size_t i = 0; i < queue.size(); ++i) {
    if (queue[i] > 0.0) {
      s.first_nonzero_time = time[i];
      break;
    }
  }
  for (std::size_t i = p; i + 1 < queue.size(); ++i) {
    if (queue[i + 1] < queue[i]) {
      s.dissipation_start = time[i];
      break;
    }
  }
  if (*peak > 0.0) {
    for (std::size_t i = p + 1; i < queue.size(); ++i) {
      if (queue[i] == 0.0) {
        s.vanish_time = time[i];
        break;
      }
    }
  }
  return s;
}

double min_queue_after(const Trajectory& tr, double t0) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.time[i] >= t0) m = std::min(m, tr.queue[i]);
  }
  return m;
}

double max_queue_between(const Trajectory& tr, double t0, double t1) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (tr.time[i] >= t0 && tr.time[i] <= t1) m = std::max(m, tr.queue[i]);
  }
  return m;
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw DomainError("trajectories are on different grids");
  return kernels::sup_norm_distance(a.queue, b.queue);
}

}  // namespace pqkit
