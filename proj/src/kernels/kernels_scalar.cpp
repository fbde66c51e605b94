#include <algorithm>
#include <cmath>

#include "pqkit/kernels/kernels.hpp"

namespace pqkit::kernels::scalar {
namespace {

template <bool kDemandArrivals, bool kSupplyService>
void step_lanes(std::span<std::int64_t> queue, std::span<const std::int64_t> arrivals,
                std::span<const std::int64_t> service, std::span<const std::int64_t> capacity) {
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::int64_t q = queue[i];
    const std::int64_t a = arrivals[i];
    const std::int64_t s = service[i];
    const std::int64_t demand = kDemandArrivals ? a + q : q;
    const std::int64_t supply = kSupplyService ? s + capacity[i] - q : capacity[i] - q;
    queue[i] = q + std::min(a, supply) - std::min(demand, s);
  }
}

}  // namespace

void step_point_queues(PqModel model, std::span<std::int64_t> queue,
                       std::span<const std::int64_t> arrivals,
                       std::span<const std::int64_t> service,
                       std::span<const std::int64_t> capacity) {
  switch (model) {
    case PqModel::kPqm1: step_lanes<true, true>(queue, arrivals, service, capacity); break;
    case PqModel::kPqm2: step_lanes<false, false>(queue, arrivals, service, capacity); break;
    case PqModel::kPqm3: step_lanes<true, false>(queue, arrivals, service, capacity); break;
    case PqModel::kPqm4: step_lanes<false, true>(queue, arrivals, service, capacity); break;
  }
}

void step_vickrey_queues(std::span<std::int64_t> queue, std::span<const std::int64_t> arrivals,
                         std::span<const std::int64_t> service) {
  for (std::size_t i = 0; i < queue.size(); ++i) {
    queue[i] = std::max<std::int64_t>(0, queue[i] + arrivals[i] - service[i]);
  }
}

double sup_norm_distance(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::fabs(a[i] - b[i]);
    m = d > m ? d : m;
  }
  return m;
}

}  // namespace pqkit::kernels::scalar
