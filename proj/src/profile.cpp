#include "pqkit/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pqkit/error.hpp"

namespace pqkit {
namespace {

void require_time(double t) {
  if (!(t >= 0.0)) throw DomainError("profile evaluated at negative time " + std::to_string(t));
}

void require_rate(double r, const char* what) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(what) + " must be a finite non-negative rate");
  }
}

// Integral of max{A sin(pi t), B} over one period start [0, r), r in [0, 2).
double sine_floor_partial(double amplitude, double floor, double r) {
  const double pi = std::numbers::pi;
  const double a = std::asin(floor / amplitude) / pi;
  const double cos_a = std::cos(pi * a);
  if (r <= a) return floor * r;
  if (r <= 1.0 - a) return floor * a + amplitude / pi * (cos_a - std::cos(pi * r));
  return floor * a + 2.0 * amplitude / pi * cos_a + floor * (r - (1.0 - a));
}

}  // namespace

Profile Profile::constant(double rate) {
  require_rate(rate, "constant rate");
  return Profile(Constant{rate});
}

Profile Profile::piecewise_constant(std::vector<double> breakpoints, std::vector<double> rates) {
  if (breakpoints.empty() || breakpoints.size() != rates.size()) {
    throw DomainError("piecewise-constant profile needs one rate per breakpoint");
  }
  if (breakpoints.front() != 0.0) throw DomainError("first breakpoint must be 0");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw DomainError("breakpoints must be strictly increasing");
    }
  }
  for (double r : rates) require_rate(r, "piecewise rate");
  return Profile(PiecewiseConstant{std::move(breakpoints), std::move(rates)});
}

Profile Profile::sine_floor(double amplitude, double floor) {
  require_rate(amplitude, "sine amplitude");
  require_rate(floor, "sine floor");
  if (amplitude <= floor) return constant(floor);
  return Profile(SineFloor{amplitude, floor});
}

double Profile::evaluate(double t) const {
  require_time(t);
  return std::visit(
      [t](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Constant>) {
          return s.rate;
        } else if constexpr (std::is_same_v<S, PiecewiseConstant>) {
          auto it = std::upper_bound(s.breakpoints.begin(), s.breakpoints.end(), t);
          return s.rates[static_cast<std::size_t>(it - s.breakpoints.begin()) - 1];
        } else {
          return std::max(s.amplitude * std::sin(std::numbers::pi * t), s.floor);
        }
      },
      shape_);
}

double Profile::integrate(double t) const {
  require_time(t);
  return std::visit(
      [t](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Constant>) {
          return s.rate * t;
        } else if constexpr (std::is_same_v<S, PiecewiseConstant>) {
          double total = 0.0;
          for (std::size_t i = 0; i < s.breakpoints.size(); ++i) {
            const double lo = s.breakpoints[i];
            if (t <= lo) break;
            const double hi = i + 1 < s.breakpoints.size() ? std::min(t, s.breakpoints[i + 1]) : t;
            total += s.rates[i] * (hi - lo);
          }
          return total;
        } else {
          const double periods = std::floor(t / 2.0);
          const double r = t - 2.0 * periods;
          const double per_period = sine_floor_partial(s.amplitude, s.floor, 2.0);
          return periods * per_period + sine_floor_partial(s.amplitude, s.floor, r);
        }
      },
      shape_);
}

double Profile::max_rate() const {
  return std::visit(
      [](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Constant>) {
          return s.rate;
        } else if constexpr (std::is_same_v<S, PiecewiseConstant>) {
          return *std::max_element(s.rates.begin(), s.rates.end());
        } else {
          return s.amplitude;
        }
      },
      shape_);
}

std::optional<double> Profile::first_crossing() const {
  if (const auto* s = std::get_if<SineFloor>(&shape_)) {
    return std::asin(s->floor / s->amplitude) / std::numbers::pi;
  }
  return std::nullopt;
}

}  // namespace pqkit
