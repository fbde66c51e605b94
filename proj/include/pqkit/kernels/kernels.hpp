#pragma once

// Batched arithmetic kernels.
//
// A single queue's recurrence is sequential in time, so vectorization runs
// across independent queues: lane i of every span belongs to queue i. Sweeps
// that advance thousands of randomized queues in lock-step (the
// well-definedness property suites, Monte Carlo bound checks) go through
// here. Every kernel has a scalar reference and an AVX2 variant; both are
// integer or comparison-only arithmetic and produce bit-identical results.

#include <cstdint>
#include <span>
#include <string_view>

#include "pqkit/point_queue.hpp"

namespace pqkit::kernels {

enum class Backend { kScalar, kAvx2 };

std::string_view name(Backend b);
bool available(Backend b);

/// Backend used by the dispatching entry points. Defaults to the best
/// available one; the PQKIT_KERNELS environment variable ("scalar" or
/// "avx2") overrides the default.
Backend active_backend();
/// Throws std::invalid_argument if `b` is not available on this CPU.
void set_active_backend(Backend b);

/// Batch volumes are int64 fixed point with 2^-32 veh per tick.
inline constexpr double kBatchTicksPerVeh = 0x1p32;
std::int64_t to_batch_ticks(double veh);
inline double from_batch_ticks(std::int64_t ticks) {
  return static_cast<double>(ticks) / kBatchTicksPerVeh;
}

/// One discrete step of `model` for every lane (formulation A, finite
/// capacity): q += min{a, s_vol} - min{d_vol, srv}.
void step_point_queues(PqModel model, std::span<std::int64_t> queue,
                       std::span<const std::int64_t> arrivals,
                       std::span<const std::int64_t> service,
                       std::span<const std::int64_t> capacity);

/// q = max{0, q + a - srv} for every lane.
void step_vickrey_queues(std::span<std::int64_t> queue, std::span<const std::int64_t> arrivals,
                         std::span<const std::int64_t> service);

/// max_i |a[i] - b[i]|; NaN differences are ignored. Sizes must match.
double sup_norm_distance(std::span<const double> a, std::span<const double> b);

namespace scalar {
void step_point_queues(PqModel model, std::span<std::int64_t> queue,
                       std::span<const std::int64_t> arrivals,
                       std::span<const std::int64_t> service,
                       std::span<const std::int64_t> capacity);
void step_vickrey_queues(std::span<std::int64_t> queue, std::span<const std::int64_t> arrivals,
                         std::span<const std::int64_t> service);
double sup_norm_distance(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define PQKIT_HAVE_AVX2_KERNELS 1
namespace avx2 {
void step_point_queues(PqModel model, std::span<std::int64_t> queue,
                       std::span<const std::int64_t> arrivals,
                       std::span<const std::int64_t> service,
                       std::span<const std::int64_t> capacity);
void step_vickrey_queues(std::span<std::int64_t> queue, std::span<const std::int64_t> arrivals,
                         std::span<const std::int64_t> service);
double sup_norm_distance(std::span<const double> a, std::span<const double> b);
}  // namespace avx2
#endif

}  // namespace pqkit::kernels
