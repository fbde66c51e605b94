#pragma once

#include <optional>
#include <variant>
#include <vector>

namespace pqkit {

/// Time-varying rate (veh/hr) used for origin demand and destination supply.
///
/// Profiles are closed-form: they can be evaluated at any t >= 0 and their
/// cumulative volume is computed analytically, so refining the time step
/// never re-samples an input series.
class Profile {
 public:
  struct Constant {
    double rate;
  };
  /// Rate `rates[i]` on [breakpoints[i], breakpoints[i+1]); the first
  /// breakpoint is 0 and the last rate extends to infinity.
  struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> rates;
  };
  /// max{amplitude * sin(pi t), floor}, with amplitude > floor >= 0.
  struct SineFloor {
    double amplitude;
    double floor;
  };
  using Shape = std::variant<Constant, PiecewiseConstant, SineFloor>;

  static Profile constant(double rate);
  static Profile piecewise_constant(std::vector<double> breakpoints, std::vector<double> rates);
  /// Degenerates to constant(floor) when amplitude <= floor.
  static Profile sine_floor(double amplitude, double floor);

  const Shape& shape() const { return shape_; }
  bool is_constant() const { return std::holds_alternative<Constant>(shape_); }

  /// Instantaneous rate. Breakpoints take the right-hand value.
  double evaluate(double t) const;
  /// Exact cumulative volume S(t) = integral of the rate over [0, t].
  double integrate(double t) const;
  /// Supremum of the rate over t >= 0.
  double max_rate() const;

  /// For SineFloor, the first t > 0 where the sinusoid rises through the
  /// floor: arcsin(floor/amplitude)/pi.
  std::optional<double> first_crossing() const;

 private:
  explicit Profile(Shape shape) : shape_(std::move(shape)) {}
  Shape shape_;
};

}  // namespace pqkit
