#include "pqkit/point_queue.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "pqkit/error.hpp"

namespace pqkit {

std::string_view name(PqModel m) {
  switch (m) {
    case PqModel::kPqm1: return "PQM1";
    case PqModel::kPqm2: return "PQM2";
    case PqModel::kPqm3: return "PQM3";
    case PqModel::kPqm4: return "PQM4";
  }
  return "?";
}

std::optional<PqModel> parse_pq_model(std::string_view text) {
  for (PqModel m : kAllPqModels) {
    if (text == name(m)) return m;
  }
  return std::nullopt;
}

Volume volume_over(double rate, double dt) { return Volume::from_veh(rate * dt); }

StepVolumes discrete_demand_supply(PqModel model, Volume queue, Volume arrivals, Volume service,
                                   const Capacity& capacity, Safety safety) {
  if (safety == Safety::kChecked) {
    if (queue < Volume::zero() || (capacity.is_finite() && queue > capacity.volume())) {
      throw DomainError("queue content " + std::to_string(queue.veh()) +
                        " outside [0, capacity]");
    }
  }
  StepVolumes out;
  out.demand = demand_includes_arrivals(model) ? arrivals + queue : queue;
  if (capacity.is_finite()) {
    const Volume vacancy = capacity.volume() - queue;
    out.supply = supply_includes_service(model) ? service + vacancy : vacancy;
  }
  return out;
}

Transfer junction_transfer(const StepVolumes& ds, Volume arrivals, Volume service) {
  return {min_bounded(arrivals, ds.supply), min(ds.demand, service)};
}

PqState PqState::initial(Volume initial_queue) {
  return {initial_queue, initial_queue, Volume::zero(), 0.0};
}

PqStep step_pq_volumes(const PqVariant& variant, const PqState& state, Volume arrivals,
                       Volume service, double dt, const Capacity& capacity, Safety safety) {
  PqStep result;
  PqState& next = result.next;
  if (variant.formulation == Formulation::kA) {
    const auto ds =
        discrete_demand_supply(variant.model, state.queue, arrivals, service, capacity, safety);
    result.transfer = junction_transfer(ds, arrivals, service);
    next.queue = state.queue + result.transfer.inflow - result.transfer.outflow;
    next.cum_in = state.cum_in + result.transfer.inflow;
    next.cum_out = state.cum_out + result.transfer.outflow;
  } else {
    const Volume queue = state.cum_in - state.cum_out;
    const auto ds =
        discrete_demand_supply(variant.model, queue, arrivals, service, capacity, safety);
    result.transfer = junction_transfer(ds, arrivals, service);
    next.cum_in = state.cum_in + result.transfer.inflow;
    next.cum_out = state.cum_out + result.transfer.outflow;
    next.queue = next.cum_in - next.cum_out;
  }
  next.time = state.time + dt;
  return result;
}

PqStep step_pq(const PqVariant& variant, const PqState& state, double arrival_rate,
               double service_rate, double dt, const Capacity& capacity, Safety safety) {
  return step_pq_volumes(variant, state, volume_over(arrival_rate, dt),
                         volume_over(service_rate, dt), dt, capacity, safety);
}

double well_definedness_bound(PqModel model, double max_arrival_rate, double max_service_rate,
                              const Capacity& capacity) {
  constexpr double kUnbounded = std::numeric_limits<double>::infinity();
  if (!capacity.is_finite()) return kUnbounded;
  switch (model) {
    case PqModel::kPqm1:
    case PqModel::kPqm2:
      return kUnbounded;
    case PqModel::kPqm3:
      return max_service_rate > 0.0 ? capacity.veh() / max_service_rate : kUnbounded;
    case PqModel::kPqm4:
      return max_arrival_rate > 0.0 ? capacity.veh() / max_arrival_rate : kUnbounded;
  }
  return kUnbounded;
}

void require_well_defined(PqModel model, double max_arrival_rate, double max_service_rate,
                          const Capacity& capacity, double dt) {
  const double bound =
      well_definedness_bound(model, max_arrival_rate, max_service_rate, capacity);
  if (dt <= bound) return;
  const char* rate = model == PqModel::kPqm3 ? "σ_max" : "δ_max";
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s-D requires Δt ≤ Λ/%s = %.4f hr (got Δt = %g hr)",
                std::string(name(model)).c_str(), rate, bound, dt);
  throw ConfigError(buf);
}

Volume step_vickrey(Volume queue, Volume arrivals, Volume service) {
  return max(Volume::zero(), queue + arrivals - service);
}

double step_vickrey(double queue, double arrival_rate, double service_rate, double dt) {
  return step_vickrey(Volume::from_veh(queue), volume_over(arrival_rate, dt),
                      volume_over(service_rate, dt))
      .veh();
}

}  // namespace pqkit
