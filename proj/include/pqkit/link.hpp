#pragma once

#include "pqkit/volume.hpp"

namespace pqkit {

struct TraverseTimes {
  double free_flow;  // T1 = L/V
  double wave;       // T2 = L/W
  double total;      // T3 = L/U = T1 + T2
};

/// Homogeneous road link with a triangular fundamental diagram.
/// Units: miles, hours, vehicles.
struct LinkParams {
  double length;       // L, mi
  double lanes;        // N
  double free_speed;   // V, mph
  double wave_speed;   // W, mph
  double jam_density;  // K, veh/mi/lane

  /// Throws DomainError unless every field is finite and strictly positive.
  void validate() const;

  /// Harmonic speed U = VW/(V+W).
  double harmonic_speed() const;
  TraverseTimes traverse_times() const;
  /// Lambda = N L K.
  double storage_capacity() const;
  /// Total capacity N U K, equal to storage_capacity()/T3.
  double capacity_flow() const;
  double critical_density() const;

  /// Triangular diagram min{V k, (N K - k) W}; k is total density over all
  /// lanes and must lie in [0, N K].
  double flow(double density) const;
};

/// Point-queue description: storage capacity (finite or not) and the
/// initial content.
struct QueueSpec {
  Capacity capacity = Capacity::infinite();
  Volume initial = Volume::zero();

  /// Throws DomainError unless 0 <= initial <= capacity.
  void validate() const;
};

}  // namespace pqkit
