#pragma once

#include <string>
#include <vector>

#include "pqkit/link.hpp"
#include "pqkit/point_queue.hpp"
#include "pqkit/profile.hpp"
#include "pqkit/simulation.hpp"
#include "pqkit/volume.hpp"

namespace pqkit {

struct TandemQueue {
  QueueSpec spec;
  PqModel model = PqModel::kPqm1;
};

/// Point queues in series, upstream first. The origin feeds queue 0 at the
/// arrival rate and the destination drains the last queue at the service
/// rate.
struct TandemSpec {
  std::vector<TandemQueue> queues;
  Profile arrivals = Profile::constant(0.0);
  Profile service = Profile::constant(0.0);
  Formulation formulation = Formulation::kA;

  /// Throws ConfigError for an empty tandem; DomainError for a bad queue.
  void validate() const;
  /// True when the queues do not all share one model.
  bool mixed_models() const;
};

struct TandemState {
  std::vector<PqState> queues;
  double time = 0.0;

  static TandemState initial(const TandemSpec& spec);
};

struct TandemStep {
  TandemState next;
  /// fluxes[i] is the volume entering queue i; fluxes[N] leaves the last one.
  std::vector<Volume> fluxes;
};

/// One Jacobi step: every demand and supply comes from the step-start state.
/// Demands chain downstream (queue i sees the upstream demand in place of
/// arrivals), supplies chain upstream (queue i sees the downstream supply in
/// place of service), each according to the queue's own model.
TandemStep step_tandem(const TandemSpec& spec, const TandemState& state, double dt,
                       Safety safety = Safety::kChecked);

/// Throws ConfigError when dt exceeds any queue's well-definedness bound.
/// Interior queues are checked against the origin and destination peaks.
void validate_tandem(const TandemSpec& spec, double dt);

struct TandemRun {
  std::vector<Trajectory> queues;
  /// max over steps of |(F_origin - G_destination) - sum of queues|, veh.
  double conservation_residual = 0.0;
  bool experimental = false;
};

TandemRun simulate_tandem(const TandemSpec& spec, double dt, double horizon,
                          Safety safety = Safety::kChecked);

}  // namespace pqkit
