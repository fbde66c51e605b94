#include "pqkit/link.hpp"

#include <cmath>
#include <algorithm>
#include <string>

#include "pqkit/error.hpp"

namespace pqkit {

void LinkParams::validate() const {
  for (double v : {length, lanes, free_speed, wave_speed, jam_density}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw DomainError("link parameters must be finite and strictly positive");
    }
  }
}

double LinkParams::harmonic_speed() const {
  return free_speed * wave_speed / (free_speed + wave_speed);
}

TraverseTimes LinkParams::traverse_times() const {
  const double t1 = length / free_speed;
  const double t2 = length / wave_speed;
  return {t1, t2, t1 + t2};
}

double LinkParams::storage_capacity() const { return lanes * length * jam_density; }

double LinkParams::capacity_flow() const { return lanes * harmonic_speed() * jam_density; }

double LinkParams::critical_density() const {
  return lanes * jam_density * wave_speed / (free_speed + wave_speed);
}

double LinkParams::flow(double density) const {
  const double jam = lanes * jam_density;
  if (!(density >= 0.0 && density <= jam)) {
    throw DomainError("density " + std::to_string(density) + " outside [0, N K]");
  }
  return std::min(free_speed * density, (jam - density) * wave_speed);
}

void QueueSpec::validate() const {
  if (initial < Volume::zero()) throw DomainError("initial queue content must be non-negative");
  if (capacity.is_finite() && initial > capacity.volume()) {
    throw DomainError("initial queue content exceeds storage capacity");
  }
}

}  // namespace pqkit
