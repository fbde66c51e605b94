#include "pqkit/approx.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "pqkit/error.hpp"

namespace pqkit {
namespace {

void check_range(double queue, const Capacity& capacity) {
  if (queue < 0.0 || queue > capacity.veh()) {
    throw DomainError("queue content " + std::to_string(queue) + " outside [0, capacity]");
  }
}

}  // namespace

void EpsilonConfig::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("ε must be positive");
  if (!(dt > 0.0)) throw ConfigError("Δt must be positive");
  if (dt > eps) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "discrete ε models require Δt ≤ ε = %g hr (got Δt = %g hr)",
                  eps, dt);
    throw ConfigError(buf);
  }
}

Rates eps_demand_supply(PqModel model, double queue, double arrival_rate, double service_rate,
                        double eps, const Capacity& capacity, Safety safety) {
  if (safety == Safety::kChecked) check_range(queue, capacity);
  Rates r;
  r.demand = demand_includes_arrivals(model) ? arrival_rate + queue / eps : queue / eps;
  if (capacity.is_finite()) {
    const double relax = (capacity.veh() - queue) / eps;
    r.supply = supply_includes_service(model) ? service_rate + relax : relax;
  }
  return r;
}

StepVolumes eps_discrete_demand_supply(PqModel model, Volume queue, Volume arrivals,
                                       Volume service, double relax_ratio,
                                       const Capacity& capacity, Safety safety) {
  if (safety == Safety::kChecked) {
    if (queue < Volume::zero() || (capacity.is_finite() && queue > capacity.volume())) {
      throw DomainError("queue content " + std::to_string(queue.veh()) +
                        " outside [0, capacity]");
    }
  }
  StepVolumes out;
  const Volume drain = queue.scaled(relax_ratio);
  out.demand = demand_includes_arrivals(model) ? arrivals + drain : drain;
  if (capacity.is_finite()) {
    const Volume fill = (capacity.volume() - queue).scaled(relax_ratio);
    out.supply = supply_includes_service(model) ? service + fill : fill;
  }
  return out;
}

double eps_well_definedness_bound(PqModel model, double max_arrival_rate,
                                  double max_service_rate, const Capacity& capacity) {
  // Same structure as the discrete exact-model bound, with eps in place of dt.
  return well_definedness_bound(model, max_arrival_rate, max_service_rate, capacity);
}

void require_eps_well_defined(PqModel model, double max_arrival_rate, double max_service_rate,
                              const Capacity& capacity, const EpsilonConfig& cfg) {
  cfg.validate();
  const double bound =
      eps_well_definedness_bound(model, max_arrival_rate, max_service_rate, capacity);
  if (cfg.eps <= bound) return;
  const char* rate = model == PqModel::kPqm3 ? "σ_max" : "δ_max";
  char buf[160];
  std::snprintf(buf, sizeof buf, "ε-%s requires ε ≤ Λ/%s = %.4f hr (got ε = %g hr)",
                std::string(name(model)).c_str(), rate, bound, cfg.eps);
  throw ConfigError(buf);
}

PqStep step_eps(const PqVariant& variant, const PqState& state, double arrival_rate,
                double service_rate, const EpsilonConfig& cfg, const Capacity& capacity,
                Safety safety) {
  const Volume arrivals = volume_over(arrival_rate, cfg.dt);
  const Volume service = volume_over(service_rate, cfg.dt);
  const double ratio = cfg.dt / cfg.eps;
  PqStep result;
  PqState& next = result.next;
  const Volume queue =
      variant.formulation == Formulation::kA ? state.queue : state.cum_in - state.cum_out;
  const auto ds =
      eps_discrete_demand_supply(variant.model, queue, arrivals, service, ratio, capacity, safety);
  result.transfer = junction_transfer(ds, arrivals, service);
  next.cum_in = state.cum_in + result.transfer.inflow;
  next.cum_out = state.cum_out + result.transfer.outflow;
  if (variant.formulation == Formulation::kA) {
    next.queue = state.queue + result.transfer.inflow - result.transfer.outflow;
  } else {
    next.queue = next.cum_in - next.cum_out;
  }
  next.time = state.time + cfg.dt;
  return result;
}

double alpha_model_step(double queue, double arrival_rate, double service_rate, double eps,
                        double dt) {
  return alpha_model_step(Volume::from_veh(queue), volume_over(arrival_rate, dt),
                          volume_over(service_rate, dt), dt / eps)
      .veh();
}

Volume alpha_model_step(Volume queue, Volume arrivals, Volume service, double relax_ratio) {
  // inflow is unbounded; outflow = min{arrivals + q dt/eps, service}
  return queue + arrivals - min(arrivals + queue.scaled(relax_ratio), service);
}

double eps_model_step(double queue, double arrival_rate, double service_rate, double eps,
                      double dt) {
  return eps_model_step(Volume::from_veh(queue), volume_over(arrival_rate, dt),
                        volume_over(service_rate, dt), dt / eps)
      .veh();
}

Volume eps_model_step(Volume queue, Volume arrivals, Volume service, double relax_ratio) {
  return queue + arrivals - min(queue.scaled(relax_ratio), service);
}

}  // namespace pqkit
