#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pqkit/volume.hpp"

namespace pqkit {

/// The four point queue models, by their demand/supply pairing:
///
///               demand = arrivals + queue   demand = queue
///   supply = service + vacancy   PQM1             PQM4
///   supply = vacancy             PQM3             PQM2
///
/// PQM1 is the zero-length limit of the link transmission model, PQM2 that
/// of the link queue model; PQM3 and PQM4 mix the two.
enum class PqModel { kPqm1, kPqm2, kPqm3, kPqm4 };

/// A: queue length is the state. B: cumulative in/out flows are the state.
enum class Formulation { kA, kB };

struct PqVariant {
  PqModel model = PqModel::kPqm1;
  Formulation formulation = Formulation::kA;
  friend bool operator==(const PqVariant&, const PqVariant&) = default;
};

inline constexpr PqModel kAllPqModels[] = {PqModel::kPqm1, PqModel::kPqm2, PqModel::kPqm3,
                                           PqModel::kPqm4};

constexpr bool demand_includes_arrivals(PqModel m) {
  return m == PqModel::kPqm1 || m == PqModel::kPqm3;
}
constexpr bool supply_includes_service(PqModel m) {
  return m == PqModel::kPqm1 || m == PqModel::kPqm4;
}

std::string_view name(PqModel m);
std::optional<PqModel> parse_pq_model(std::string_view text);

/// Demand and supply over one step, as volumes (rate times dt). An absent
/// supply is unbounded (infinite storage).
struct StepVolumes {
  Volume demand;
  std::optional<Volume> supply;
};

/// Volumes actually moved across the upstream and downstream boundaries.
struct Transfer {
  Volume inflow;
  Volume outflow;
};

enum class Safety { kChecked, kUnchecked };

/// Volume `rate * dt` on the tick grid.
Volume volume_over(double rate, double dt);

/// Discrete demand and supply for one step from the step-start queue.
/// Throws DomainError if `queue` lies outside [0, capacity] and `safety` is
/// kChecked.
StepVolumes discrete_demand_supply(PqModel model, Volume queue, Volume arrivals, Volume service,
                                   const Capacity& capacity, Safety safety = Safety::kChecked);

/// Junction rule: inflow = min{arrivals, supply}, outflow = min{demand, service}.
Transfer junction_transfer(const StepVolumes& ds, Volume arrivals, Volume service);

struct PqState {
  Volume queue;
  Volume cum_in;
  Volume cum_out;
  double time = 0.0;

  /// Queue length q = F - G, F(0) = initial, G(0) = 0.
  static PqState initial(Volume initial_queue);
};

struct PqStep {
  PqState next;
  Transfer transfer;
};

/// One explicit step. Formulation A advances the queue length directly;
/// formulation B advances the cumulative flows and reads the queue as their
/// difference. Both see identical demand/supply volumes, so they agree
/// exactly.
PqStep step_pq(const PqVariant& variant, const PqState& state, double arrival_rate,
               double service_rate, double dt, const Capacity& capacity,
               Safety safety = Safety::kChecked);

PqStep step_pq_volumes(const PqVariant& variant, const PqState& state, Volume arrivals,
                       Volume service, double dt, const Capacity& capacity,
                       Safety safety = Safety::kChecked);

/// Largest dt for which the discrete model maps [0, capacity] into itself:
/// unbounded for PQM1/PQM2 and infinite capacity, capacity/max service for
/// PQM3 and capacity/max arrival for PQM4. Returns +inf when unbounded.
double well_definedness_bound(PqModel model, double max_arrival_rate, double max_service_rate,
                              const Capacity& capacity);

/// Throws ConfigError naming the bound if dt exceeds it.
void require_well_defined(PqModel model, double max_arrival_rate, double max_service_rate,
                          const Capacity& capacity, double dt);

/// Infinite-capacity PQM1/PQM3 step: max{0, q + (arrival - service)}.
Volume step_vickrey(Volume queue, Volume arrivals, Volume service);
double step_vickrey(double queue, double arrival_rate, double service_rate, double dt);

}  // namespace pqkit
