#include "pqkit/analytical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pqkit/error.hpp"
#include "pqkit/simulation.hpp"

namespace pqkit {
namespace {

void require_rates(double arrival_rate, double service_rate) {
  if (!(arrival_rate >= 0.0) || !(service_rate >= 0.0) || !std::isfinite(arrival_rate) ||
      !std::isfinite(service_rate)) {
    throw DomainError("stationary rates must be finite and non-negative");
  }
}

StationaryResult point(double v, double flux, bool limit = false) {
  return {StationaryResult::Kind::kPoint, v, v, flux, limit};
}

StationaryResult interval(double lo, double hi, double flux) {
  return {StationaryResult::Kind::kInterval, lo, hi, flux, false};
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

VickreySolution vickrey_closed_form(const Profile& arrivals, const Profile& service, double dt,
                                    double horizon, double initial_queue) {
  if (initial_queue != 0.0) {
    throw UnsupportedCase("closed-form Vickrey solution requires an empty initial queue");
  }
  const long long n = step_count(dt, horizon);
  VickreySolution sol;
  sol.time.reserve(n + 1);
  sol.cum_in.reserve(n + 1);
  sol.cum_out.reserve(n + 1);
  sol.queue.reserve(n + 1);
  double running_min = std::numeric_limits<double>::infinity();
  for (long long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const double f = arrivals.integrate(t);
    const double s = service.integrate(t);
    running_min = std::min(running_min, f - s);
    const double q = f - s - running_min;
    sol.time.push_back(t);
    sol.cum_in.push_back(f);
    sol.queue.push_back(q);
    sol.cum_out.push_back(f - q);
  }
  if (const auto* c = std::get_if<Profile::Constant>(&service.shape())) {
    std::vector<double> pi;
    pi.reserve(sol.queue.size());
    for (double q : sol.queue) pi.push_back(queueing_time(q, c->rate));
    sol.queueing_time = std::move(pi);
  }
  return sol;
}

std::vector<double> vickrey_max_formula(const VickreySolution& sol, double service_rate) {
  std::vector<double> out;
  out.reserve(sol.time.size());
  // max_tau {F(t) - F(tau) - (t - tau) sigma} = F(t) - t sigma + max_tau {tau sigma - F(tau)}
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sol.time.size(); ++i) {
    const double t = sol.time[i];
    best = std::max(best, t * service_rate - sol.cum_in[i]);
    out.push_back(sol.cum_in[i] - t * service_rate + best);
  }
  return out;
}

double queueing_time(double queue, double service_rate) {
  if (!(queue >= 0.0) || !(service_rate >= 0.0)) {
    throw DomainError("queueing time needs a non-negative queue and service rate");
  }
  if (queue == 0.0) return 0.0;
  if (service_rate == 0.0) throw DomainError("queueing time undefined: positive queue, zero service");
  return queue / service_rate;
}

StationaryResult stationary_exact(PqModel model, double arrival_rate, double service_rate,
                                  const Capacity& capacity) {
  require_rates(arrival_rate, service_rate);
  const double flux = std::min(arrival_rate, service_rate);
  const double cap = capacity.veh();
  if (arrival_rate > service_rate) {
    if (!capacity.is_finite()) {
      throw UnsupportedCase("arrivals exceed service with unbounded storage: no stationary state");
    }
    // PQM2/PQM3 take no inflow at lambda = cap, so the continuous model has
    // no fixed point; the discrete one settles at cap - sigma dt.
    const bool limit = service_rate > 0.0 && !supply_includes_service(model);
    return point(cap, flux, limit);
  }
  if (arrival_rate < service_rate) {
    // PQM2/PQM4 release nothing at lambda = 0; discrete fixed point delta dt.
    const bool limit = arrival_rate > 0.0 && !demand_includes_arrivals(model);
    return point(0.0, flux, limit);
  }
  return interval(0.0, cap, flux);
}

StationaryResult stationary_eps(PqModel model, double arrival_rate, double service_rate,
                                const Capacity& capacity, double eps) {
  require_rates(arrival_rate, service_rate);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("ε must be positive and finite");
  const double cap = capacity.veh();
  const double peak = std::max(arrival_rate, service_rate);
  if (capacity.is_finite() && peak > 0.0 && eps > cap / peak) {
    throw ConfigError("ε-" + std::string(name(model)) + " requires ε ≤ Λ/max{δ,σ} = " +
                      num(cap / peak) + " hr (got ε = " + num(eps) + " hr)");
  }
  const double flux = std::min(arrival_rate, service_rate);
  const double low = demand_includes_arrivals(model) ? 0.0 : eps * arrival_rate;
  const double high = supply_includes_service(model) ? cap : cap - eps * service_rate;
  if (arrival_rate > service_rate) {
    if (!capacity.is_finite()) {
      throw UnsupportedCase("arrivals exceed service with unbounded storage: no stationary state");
    }
    return point(high, flux);
  }
  if (arrival_rate < service_rate) return point(low, flux);
  return interval(low, high, flux);
}

std::string render(const StationaryResult& r, const Capacity& capacity) {
  std::string out;
  if (r.kind == StationaryResult::Kind::kInterval) {
    out = "interval [" + num(r.lo) + "," + num(r.hi) + "]";
  } else if (capacity.is_finite() && r.lo == capacity.veh()) {
    out = "full: λ=" + num(r.lo);
  } else if (r.lo == 0.0) {
    out = "empty: λ=0";
  } else {
    out = "λ=" + num(r.lo);
  }
  out += ", flux=" + num(r.flux);
  if (r.limit_of_discrete) out += " (limit of discrete scheme)";
  return out;
}

}  // namespace pqkit
