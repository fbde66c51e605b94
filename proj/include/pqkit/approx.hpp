#pragma once

#include <optional>

#include "pqkit/point_queue.hpp"
#include "pqkit/volume.hpp"

namespace pqkit {

/// Relaxation time epsilon (hr) replacing the indicator H(y) by y/epsilon,
/// together with the step size it is integrated with.
struct EpsilonConfig {
  double eps;
  double dt;

  /// Throws ConfigError unless eps > 0, dt > 0 and dt <= eps.
  void validate() const;
};

/// Continuous demand and supply rates (veh/hr) of the epsilon models. An
/// absent supply is unbounded.
struct Rates {
  double demand;
  std::optional<double> supply;
};

Rates eps_demand_supply(PqModel model, double queue, double arrival_rate, double service_rate,
                        double eps, const Capacity& capacity, Safety safety = Safety::kChecked);

/// Per-step volumes of the discrete epsilon models: the exact-model table
/// with queue terms scaled by dt/eps. At dt == eps they coincide exactly
/// with discrete_demand_supply.
StepVolumes eps_discrete_demand_supply(PqModel model, Volume queue, Volume arrivals,
                                       Volume service, double relax_ratio,
                                       const Capacity& capacity,
                                       Safety safety = Safety::kChecked);

/// Largest eps for which the continuous epsilon model stays in
/// [0, capacity]: unbounded for eps-PQM1/2, capacity/max service for
/// eps-PQM3, capacity/max arrival for eps-PQM4.
double eps_well_definedness_bound(PqModel model, double max_arrival_rate,
                                  double max_service_rate, const Capacity& capacity);

/// Throws ConfigError naming the violated condition (dt <= eps, and the
/// per-model bound on eps).
void require_eps_well_defined(PqModel model, double max_arrival_rate, double max_service_rate,
                              const Capacity& capacity, const EpsilonConfig& cfg);

PqStep step_eps(const PqVariant& variant, const PqState& state, double arrival_rate,
                double service_rate, const EpsilonConfig& cfg, const Capacity& capacity,
                Safety safety = Safety::kChecked);

/// Infinite-capacity eps-PQM1/3: q' = q + dt * max{arrival - service, -q/eps}.
double alpha_model_step(double queue, double arrival_rate, double service_rate, double eps,
                        double dt);
Volume alpha_model_step(Volume queue, Volume arrivals, Volume service, double relax_ratio);

/// Infinite-capacity eps-PQM2/4: q' = q + dt * (arrival - min{service, q/eps}).
double eps_model_step(double queue, double arrival_rate, double service_rate, double eps,
                      double dt);
Volume eps_model_step(Volume queue, Volume arrivals, Volume service, double relax_ratio);

}  // namespace pqkit
