// Compiled with -mavx2; only reached after a runtime CPU check.
#include "pqkit/kernels/kernels.hpp"

#if defined(PQKIT_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace pqkit::kernels::avx2 {
namespace {

inline __m256i min_epi64(__m256i x, __m256i y) {
  return _mm256_blendv_epi8(x, y, _mm256_cmpgt_epi64(x, y));
}

inline __m256i load(const std::int64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

template <bool kDemandArrivals, bool kSupplyService>
void step_lanes(std::span<std::int64_t> queue, std::span<const std::int64_t> arrivals,
                std::span<const std::int64_t> service, std::span<const std::int64_t> capacity) {
  const std::size_t n = queue.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i q = load(queue.data() + i);
    const __m256i a = load(arrivals.data() + i);
    const __m256i s = load(service.data() + i);
    const __m256i vacancy = _mm256_sub_epi64(load(capacity.data() + i), q);
    const __m256i demand = kDemandArrivals ? _mm256_add_epi64(a, q) : q;
    const __m256i supply = kSupplyService ? _mm256_add_epi64(s, vacancy) : vacancy;
    const __m256i next =
        _mm256_sub_epi64(_mm256_add_epi64(q, min_epi64(a, supply)), min_epi64(demand, s));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(queue.data() + i), next);
  }
  for (; i < n; ++i) {
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
  const std::size_t n = queue.size();
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i x = _mm256_sub_epi64(
        _mm256_add_epi64(load(queue.data() + i), load(arrivals.data() + i)),
        load(service.data() + i));
    const __m256i next = _mm256_blendv_epi8(zero, x, _mm256_cmpgt_epi64(x, zero));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(queue.data() + i), next);
  }
  for (; i < n; ++i) {
    queue[i] = std::max<std::int64_t>(0, queue[i] + arrivals[i] - service[i]);
  }
}

double sup_norm_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_andnot_pd(sign, _mm256_sub_pd(_mm256_loadu_pd(a.data() + i),
                                             _mm256_loadu_pd(b.data() + i)));
    // max_pd returns its second operand when either is NaN, so NaN lanes
    // leave the accumulator untouched.
    acc = _mm256_max_pd(d, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = 0.0;
  for (double v : lanes) m = v > m ? v : m;
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    m = d > m ? d : m;
  }
  return m;
}

}  // namespace pqkit::kernels::avx2

#endif
