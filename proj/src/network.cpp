#include "pqkit/network.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "pqkit/error.hpp"

namespace pqkit {

void TandemSpec::validate() const {
  if (queues.empty()) throw ConfigError("tandem needs at least one queue");
  for (const auto& q : queues) q.spec.validate();
}

bool TandemSpec::mixed_models() const {
  return std::any_of(queues.begin(), queues.end(),
                     [&](const TandemQueue& q) { return q.model != queues.front().model; });
}

TandemState TandemState::initial(const TandemSpec& spec) {
  TandemState s;
  for (const auto& q : spec.queues) s.queues.push_back(PqState::initial(q.spec.initial));
  return s;
}

TandemStep step_tandem(const TandemSpec& spec, const TandemState& state, double dt,
                       Safety safety) {
  const std::size_t n = spec.queues.size();
  if (state.queues.size() != n) throw DomainError("tandem state does not match spec");
  const Volume arrivals = volume_over(spec.arrivals.evaluate(state.time), dt);
  const Volume service = volume_over(spec.service.evaluate(state.time), dt);

  std::vector<Volume> queue(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PqState& s = state.queues[i];
    queue[i] = spec.formulation == Formulation::kA ? s.queue : s.cum_in - s.cum_out;
    const Capacity& cap = spec.queues[i].spec.capacity;
    if (safety == Safety::kChecked &&
        (queue[i] < Volume::zero() || (cap.is_finite() && queue[i] > cap.volume()))) {
      throw DomainError("tandem queue " + std::to_string(i + 1) + " left [0, Λ]");
    }
  }

  std::vector<Volume> demand(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Volume upstream = i == 0 ? arrivals : demand[i - 1];
    demand[i] = demand_includes_arrivals(spec.queues[i].model) ? upstream + queue[i] : queue[i];
  }
  std::vector<std::optional<Volume>> supply(n);
  for (std::size_t i = n; i-- > 0;) {
    const Capacity& cap = spec.queues[i].spec.capacity;
    if (!cap.is_finite()) continue;
    const Volume vacancy = cap.volume() - queue[i];
    if (!supply_includes_service(spec.queues[i].model)) {
      supply[i] = vacancy;
    } else if (i + 1 == n) {
      supply[i] = service + vacancy;
    } else if (supply[i + 1]) {
      supply[i] = *supply[i + 1] + vacancy;
    }
  }

  TandemStep out;
  out.fluxes.resize(n + 1);
  out.fluxes[0] = min_bounded(arrivals, supply[0]);
  for (std::size_t i = 1; i < n; ++i) out.fluxes[i] = min_bounded(demand[i - 1], supply[i]);
  out.fluxes[n] = min(demand[n - 1], service);

  out.next.time = state.time + dt;
  out.next.queues.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    PqState s = state.queues[i];
    s.cum_in += out.fluxes[i];
    s.cum_out += out.fluxes[i + 1];
    s.queue = spec.formulation == Formulation::kA ? s.queue + out.fluxes[i] - out.fluxes[i + 1]
                                                  : s.cum_in - s.cum_out;
    s.time = out.next.time;
    out.next.queues.push_back(s);
  }
  return out;
}

void validate_tandem(const TandemSpec& spec, double dt) {
  spec.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("Δt must be positive and finite");
  const double peak_in = spec.arrivals.max_rate();
  const double peak_out = spec.service.max_rate();
  for (const auto& q : spec.queues) {
    require_well_defined(q.model, peak_in, peak_out, q.spec.capacity, dt);
  }
}

TandemRun simulate_tandem(const TandemSpec& spec, double dt, double horizon, Safety safety) {
  if (safety == Safety::kChecked) {
    validate_tandem(spec, dt);
  } else {
    spec.validate();
  }
  const long long steps = step_count(dt, horizon);
  const std::size_t n = spec.queues.size();
  TandemRun run;
  run.experimental = spec.mixed_models();
  run.queues.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    run.queues[i].label = "queue" + std::to_string(i + 1);
    run.queues[i].dt = dt;
    run.queues[i].reserve(static_cast<std::size_t>(steps));
  }
  TandemState state = TandemState::initial(spec);
  Volume initial_total;
  for (const auto& q : state.queues) initial_total += q.queue;
  Volume origin;
  Volume destination;
  double residual = 0.0;
  for (long long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    state.time = t;
    TandemStep step = step_tandem(spec, state, dt, safety);
    for (std::size_t i = 0; i < n; ++i) {
      const PqState& s = state.queues[i];
      run.queues[i].push(t, s.queue, s.cum_in, s.cum_out,
                         Transfer{step.fluxes[i], step.fluxes[i + 1]});
    }
    origin += step.fluxes.front();
    destination += step.fluxes.back();
    state = std::move(step.next);
    Volume total;
    for (const auto& q : state.queues) total += q.queue;
    residual =
        std::max(residual, std::fabs((initial_total + origin - destination - total).veh()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    run.queues[i].final_queue = state.queues[i].queue;
    run.queues[i].final_cum_in = state.queues[i].cum_in;
    run.queues[i].final_cum_out = state.queues[i].cum_out;
  }
  run.conservation_residual = residual;
  return run;
}

}  // namespace pqkit
