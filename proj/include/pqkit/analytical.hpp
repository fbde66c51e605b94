#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqkit/point_queue.hpp"
#include "pqkit/profile.hpp"
#include "pqkit/volume.hpp"

namespace pqkit {

/// Closed-form infinite-capacity point queue on a uniform grid t_i = i*dt,
/// i = 0..N with N = step_count(dt, horizon).
struct VickreySolution {
  std::vector<double> time;
  std::vector<double> cum_in;   // F
  std::vector<double> cum_out;  // G
  std::vector<double> queue;    // lambda = F - G
  /// Queueing time lambda/sigma; present when the service rate is constant.
  std::optional<std::vector<double>> queueing_time;
};

/// lambda(t) = F(t) - S(t) - min_{tau <= t} {F(tau) - S(tau)}, with F and S
/// the exact cumulative arrival and service curves and the running minimum
/// taken over grid points. Throws UnsupportedCase for a nonzero initial queue.
VickreySolution vickrey_closed_form(const Profile& arrivals, const Profile& service, double dt,
                                    double horizon, double initial_queue = 0.0);

/// lambda(t) = max_{tau <= t} {F(t) - F(tau) - (t - tau) sigma} for a constant
/// service rate, evaluated on the same grid as `sol`.
std::vector<double> vickrey_max_formula(const VickreySolution& sol, double service_rate);

/// lambda/sigma. Throws DomainError for a negative queue or rate, or for a
/// positive queue with zero service.
double queueing_time(double queue, double service_rate);

struct StationaryResult {
  enum class Kind { kPoint, kInterval };
  Kind kind = Kind::kPoint;
  double lo = 0.0;  // the point value when kind == kPoint
  double hi = 0.0;
  double flux = 0.0;
  /// The continuous model has no constant solution here; the value is the
  /// dt -> 0 limit of the discrete model's fixed point.
  bool limit_of_discrete = false;

  double value() const { return lo; }
  friend bool operator==(const StationaryResult&, const StationaryResult&) = default;
};

/// Stationary queue of the exact models under constant rates: full when
/// arrival > service, empty when arrival < service, any state when equal.
/// Throws UnsupportedCase when arrival > service and capacity is infinite.
StationaryResult stationary_exact(PqModel model, double arrival_rate, double service_rate,
                                  const Capacity& capacity);

/// Stationary queue of the epsilon models. Throws ConfigError unless
/// 0 < eps <= capacity / max{arrival, service}.
StationaryResult stationary_eps(PqModel model, double arrival_rate, double service_rate,
                                const Capacity& capacity, double eps);

/// "full: λ=200, flux=1200", "empty: λ=0, flux=1000",
/// "interval [0,200], flux=1200", "λ=198.8, flux=1200".
std::string render(const StationaryResult& r, const Capacity& capacity);

}  // namespace pqkit
