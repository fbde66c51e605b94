#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "pqkit/error.hpp"
#include "pqkit/kernels/kernels.hpp"

namespace pqkit::kernels {
namespace {

Backend best_available() {
  return available(Backend::kAvx2) ? Backend::kAvx2 : Backend::kScalar;
}

Backend initial_backend() {
  if (const char* env = std::getenv("PQKIT_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Backend::kScalar;
    if (want == "avx2" && available(Backend::kAvx2)) return Backend::kAvx2;
  }
  return best_available();
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void require_same_size(std::size_t n, std::size_t m) {
  if (n != m) throw DomainError("batch spans differ in length");
}

}  // namespace

std::string_view name(Backend b) {
  switch (b) {
    case Backend::kScalar: return "scalar";
    case Backend::kAvx2: return "avx2";
  }
  return "?";
}

bool available(Backend b) {
  switch (b) {
    case Backend::kScalar: return true;
    case Backend::kAvx2:
#if defined(PQKIT_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return active().load(std::memory_order_relaxed); }

void set_active_backend(Backend b) {
  if (!available(b)) {
    throw std::invalid_argument("kernel backend " + std::string(name(b)) + " not available");
  }
  active().store(b, std::memory_order_relaxed);
}

std::int64_t to_batch_ticks(double veh) {
  if (!std::isfinite(veh) || std::fabs(veh) >= 0x1p30) {
    throw DomainError("batch volume out of range: " + std::to_string(veh));
  }
  return static_cast<std::int64_t>(std::nearbyint(veh * kBatchTicksPerVeh));
}

void step_point_queues(PqModel model, std::span<std::int64_t> queue,
                       std::span<const std::int64_t> arrivals,
                       std::span<const std::int64_t> service,
                       std::span<const std::int64_t> capacity) {
  require_same_size(queue.size(), arrivals.size());
  require_same_size(queue.size(), service.size());
  require_same_size(queue.size(), capacity.size());
#if defined(PQKIT_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2) {
    return avx2::step_point_queues(model, queue, arrivals, service, capacity);
  }
#endif
  scalar::step_point_queues(model, queue, arrivals, service, capacity);
}

void step_vickrey_queues(std::span<std::int64_t> queue, std::span<const std::int64_t> arrivals,
                         std::span<const std::int64_t> service) {
  require_same_size(queue.size(), arrivals.size());
  require_same_size(queue.size(), service.size());
#if defined(PQKIT_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2) {
    return avx2::step_vickrey_queues(queue, arrivals, service);
  }
#endif
  scalar::step_vickrey_queues(queue, arrivals, service);
}

double sup_norm_distance(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
#if defined(PQKIT_HAVE_AVX2_KERNELS)
  if (active_backend() == Backend::kAvx2) return avx2::sup_norm_distance(a, b);
#endif
  return scalar::sup_norm_distance(a, b);
}

}  // namespace pqkit::kernels
