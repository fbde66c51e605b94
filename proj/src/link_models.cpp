#include "pqkit/link_models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "pqkit/error.hpp"

namespace pqkit {
namespace {

void require_link_step(const LinkParams& params, double dt, const char* model) {
  params.validate();
  const auto times = params.traverse_times();
  const double bound = std::min(times.free_flow, times.wave);
  if (!(dt > 0.0)) throw ConfigError("Δt must be positive");
  if (dt > bound) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s requires Δt ≤ min{T1, T2} = %.6g hr (got Δt = %g hr)",
                  model, bound, dt);
    throw ConfigError(buf);
  }
}

void require_initial(const LinkParams& params, Volume initial) {
  QueueSpec spec{Capacity::finite(params.storage_capacity()), initial};
  spec.validate();
}

}  // namespace

LinkRates lqm_demand_supply(double occupancy, const LinkParams& params) {
  const double storage = params.storage_capacity();
  if (!(occupancy >= 0.0 && occupancy <= storage)) {
    throw DomainError("link occupancy " + std::to_string(occupancy) + " outside [0, Λ]");
  }
  const auto times = params.traverse_times();
  const double cap = storage / times.total;
  return {std::min(occupancy / times.free_flow, cap),
          std::min((storage - occupancy) / times.wave, cap)};
}

LqmLink::LqmLink(const LinkParams& params, Volume initial, double dt, Formulation formulation)
    : params_(params), formulation_(formulation), dt_(dt) {
  require_link_step(params, dt, "LQM");
  require_initial(params, initial);
  storage_ = Volume::from_veh(params.storage_capacity());
  capacity_step_ = volume_over(params.storage_capacity() / params.traverse_times().total, dt);
  occupancy_ = initial;
  cum_in_ = initial;
}

Volume LqmLink::occupancy() const {
  return formulation_ == Formulation::kA ? occupancy_ : cum_in_ - cum_out_;
}

StepVolumes LqmLink::demand_supply() const {
  const auto times = params_.traverse_times();
  const Volume rho = occupancy();
  // Scaling by dt/T <= 1 keeps each volume inside [0, rho] and [0, Lambda - rho].
  return {min(rho.scaled(dt_ / times.free_flow), capacity_step_),
          min((storage_ - rho).scaled(dt_ / times.wave), capacity_step_)};
}

Transfer LqmLink::step(double arrival_rate, double service_rate) {
  const Volume arrivals = volume_over(arrival_rate, dt_);
  const Volume service = volume_over(service_rate, dt_);
  const Transfer tr = junction_transfer(demand_supply(), arrivals, service);
  occupancy_ += tr.inflow - tr.outflow;
  cum_in_ += tr.inflow;
  cum_out_ += tr.outflow;
  ++steps_;
  return tr;
}

LtmLink::LtmLink(const LinkParams& params, Volume initial, double dt, Formulation formulation)
    : params_(params), formulation_(formulation), dt_(dt), initial_(initial) {
  require_link_step(params, dt, "LTM");
  require_initial(params, initial);
  const auto times = params.traverse_times();
  free_shift_ = times.free_flow / dt;
  wave_shift_ = times.wave / dt;
  storage_ = Volume::from_veh(params.storage_capacity());
  capacity_step_ = volume_over(params.storage_capacity() / times.total, dt);
  cum_in_.push_back(initial);
  cum_out_.push_back(Volume::zero());
  queue_ = upstream_at(-free_shift_) - cum_out_.back();
  vacancy_ = downstream_at(-wave_shift_) + storage_ - cum_in_.back();
}

Volume LtmLink::interpolate(const std::vector<Volume>& hist, double pos) const {
  const double base = std::floor(pos);
  const auto i = static_cast<std::size_t>(base);
  const double frac = pos - base;
  if (frac == 0.0) return hist[i];
  return hist[i] + (hist[i + 1] - hist[i]).scaled(frac);
}

Volume LtmLink::upstream_at(double pos) const {
  if (pos >= 0.0) return interpolate(cum_in_, pos);
  // Seed on [-T1, 0]: Lambda0 (1 + t/T1), with t/T1 = pos/free_shift_.
  return initial_.scaled(1.0 + pos / free_shift_);
}

Volume LtmLink::downstream_at(double pos) const {
  if (pos >= 0.0) return interpolate(cum_out_, pos);
  // Seed on [-T2, 0]: (Lambda - Lambda0) t/T2.
  return -(storage_ - initial_).scaled(-pos / wave_shift_);
}

Volume LtmLink::delayed_inflow() const {
  const double n = static_cast<double>(steps());
  return upstream_at(n + 1.0 - free_shift_) - upstream_at(n - free_shift_);
}

Volume LtmLink::delayed_outflow() const {
  const double n = static_cast<double>(steps());
  return downstream_at(n + 1.0 - wave_shift_) - downstream_at(n - wave_shift_);
}

Volume LtmLink::queue() const {
  if (formulation_ == Formulation::kA) return queue_;
  return upstream_at(static_cast<double>(steps()) - free_shift_) - cum_out_.back();
}

Volume LtmLink::vacancy() const {
  if (formulation_ == Formulation::kA) return vacancy_;
  return downstream_at(static_cast<double>(steps()) - wave_shift_) + storage_ -
         cum_in_.back();
}

StepVolumes LtmLink::demand_supply() const {
  return {min(delayed_inflow() + queue(), capacity_step_),
          min(delayed_outflow() + vacancy(), capacity_step_)};
}

Transfer LtmLink::step(double arrival_rate, double service_rate) {
  const Volume arrivals = volume_over(arrival_rate, dt_);
  const Volume service = volume_over(service_rate, dt_);
  const Volume late_in = delayed_inflow();
  const Volume late_out = delayed_outflow();
  const Transfer tr = junction_transfer(demand_supply(), arrivals, service);
  queue_ += late_in - tr.outflow;
  vacancy_ += late_out - tr.inflow;
  cum_in_.push_back(cum_in_.back() + tr.inflow);
  cum_out_.push_back(cum_out_.back() + tr.outflow);
  return tr;
}

}  // namespace pqkit
