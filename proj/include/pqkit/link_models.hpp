#pragma once

#include <vector>

#include "pqkit/link.hpp"
#include "pqkit/point_queue.hpp"
#include "pqkit/volume.hpp"

namespace pqkit {

enum class LinkModel { kLtm, kLqm };

/// Link demand and supply rates (veh/hr).
struct LinkRates {
  double demand;
  double supply;
};

/// Link queue model demand/supply: min{rho/T1, C} and min{(Lambda - rho)/T2, C}
/// with C = Lambda/T3. Throws DomainError for rho outside [0, Lambda].
LinkRates lqm_demand_supply(double occupancy, const LinkParams& params);

/// Delay-free link queue model integrated with forward Euler. Stable (stays
/// in [0, Lambda]) for dt <= min{T1, T2}; the constructor enforces that bound.
class LqmLink {
 public:
  LqmLink(const LinkParams& params, Volume initial, double dt,
          Formulation formulation = Formulation::kA);

  /// Demand and supply volumes over the next step.
  StepVolumes demand_supply() const;
  Transfer step(double arrival_rate, double service_rate);

  Volume occupancy() const;
  Volume cum_in() const { return cum_in_; }
  Volume cum_out() const { return cum_out_; }
  double time() const { return static_cast<double>(steps_) * dt_; }

 private:
  LinkParams params_;
  Formulation formulation_;
  double dt_;
  Volume storage_;
  Volume capacity_step_;
  Volume occupancy_;
  Volume cum_in_;
  Volume cum_out_;
  long long steps_ = 0;
};

/// Link transmission model. The delayed boundary fluxes f(t - T1) and
/// g(t - T2) are recovered from stored cumulative-flow histories by linear
/// interpolation, so T1 and T2 need not be multiples of dt. Histories
/// before t = 0 follow the constant-initial-density seeding: F rises at
/// Lambda0/T1 over [-T1, 0] and G at (Lambda - Lambda0)/T2 over [-T2, 0].
///
/// F(0) = Lambda0 and G(0) = 0, so F - G is the link occupancy.
class LtmLink {
 public:
  /// Throws ConfigError when dt > min{T1, T2} (the delayed window must lie
  /// inside the known history).
  LtmLink(const LinkParams& params, Volume initial, double dt,
          Formulation formulation = Formulation::kB);

  StepVolumes demand_supply() const;
  Transfer step(double arrival_rate, double service_rate);

  /// Queue size lambda(t) = F(t - T1) - G(t).
  Volume queue() const;
  /// Vacancy size gamma(t) = G(t - T2) + Lambda - F(t).
  Volume vacancy() const;
  Volume occupancy() const { return cum_in_.back() - cum_out_.back(); }
  Volume cum_in() const { return cum_in_.back(); }
  Volume cum_out() const { return cum_out_.back(); }
  double time() const { return static_cast<double>(steps()) * dt_; }

 private:
  long long steps() const { return static_cast<long long>(cum_in_.size()) - 1; }
  // Extended histories evaluated at grid position `pos` (t = pos * dt).
  Volume upstream_at(double pos) const;
  Volume downstream_at(double pos) const;
  Volume interpolate(const std::vector<Volume>& hist, double pos) const;
  Volume delayed_inflow() const;
  Volume delayed_outflow() const;

  LinkParams params_;
  Formulation formulation_;
  double dt_;
  double free_shift_;  // T1 / dt
  double wave_shift_;  // T2 / dt
  Volume initial_;
  Volume storage_;
  Volume capacity_step_;
  std::vector<Volume> cum_in_;
  std::vector<Volume> cum_out_;
  // Formulation A state.
  Volume queue_;
  Volume vacancy_;
};

}  // namespace pqkit
