#include "pqkit/volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pqkit/error.hpp"

namespace pqkit {

Volume Volume::from_veh(double veh) {
  if (!std::isfinite(veh) || std::fabs(veh) >= 0x1p62) {
    throw DomainError("vehicle count out of representable range: " + std::to_string(veh));
  }
  return from_ticks(static_cast<Rep>(std::nearbyint(veh * kTicksPerVeh)));
}

Volume Volume::scaled(double ratio) const {
  if (ratio == 1.0) return *this;
  Volume out = from_veh(veh() * ratio);
  if (ratio >= 0.0 && ratio < 1.0 && ticks_ >= 0) {
    out = max(Volume::zero(), min(out, *this));
  }
  return out;
}

Capacity Capacity::finite(double veh) {
  if (!(veh >= 0.0) || !std::isfinite(veh)) {
    throw DomainError("finite capacity must be a non-negative number");
  }
  Capacity c;
  c.limit_ = Volume::from_veh(veh);
  return c;
}

double Capacity::veh() const {
  return limit_ ? limit_->veh() : std::numeric_limits<double>::infinity();
}

}  // namespace pqkit
