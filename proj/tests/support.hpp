#pragma once

#include <random>
#include <vector>

#include "pqkit/profile.hpp"
#include "pqkit/simulation.hpp"

namespace testing_support {

// Piecewise-constant rate with breakpoints on multiples of `grid`.
inline pqkit::Profile random_piecewise(std::mt19937_64& rng, double max_rate, double grid,
                                       int pieces = 6, double max_gap = 0.5) {
  std::uniform_real_distribution<double> rate(0.0, max_rate);
  std::uniform_int_distribution<int> gap(1, static_cast<int>(max_gap / grid));
  std::vector<double> bp{0.0};
  std::vector<double> rates{rate(rng)};
  long long k = 0;
  for (int i = 1; i < pieces; ++i) {
    k += gap(rng);
    bp.push_back(static_cast<double>(k) * grid);
    rates.push_back(rate(rng));
  }
  return pqkit::Profile::piecewise_constant(std::move(bp), std::move(rates));
}

inline pqkit::RunConfig sine_floor_config(pqkit::ModelVariant model, double dt,
                                          double capacity = 200.0) {
  pqkit::RunConfig cfg;
  cfg.model = model;
  cfg.arrivals = pqkit::Profile::sine_floor(2000, 1000);
  cfg.service = pqkit::Profile::constant(1200);
  cfg.queue.capacity = pqkit::Capacity::finite(capacity);
  cfg.dt = dt;
  cfg.horizon = 2.0;
  return cfg;
}

inline pqkit::ModelVariant pq(pqkit::PqModel m,
                              pqkit::Formulation f = pqkit::Formulation::kA) {
  return {pqkit::Family::kPointQueue, m, f};
}

inline pqkit::ModelVariant eps_pq(pqkit::PqModel m,
                                  pqkit::Formulation f = pqkit::Formulation::kA) {
  return {pqkit::Family::kEpsPointQueue, m, f};
}

}  // namespace testing_support
