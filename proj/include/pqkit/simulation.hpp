#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqkit/link.hpp"
#include "pqkit/point_queue.hpp"
#include "pqkit/profile.hpp"
#include "pqkit/volume.hpp"

namespace pqkit {

enum class Family {
  kPointQueue,     // PQM1-4, discrete
  kEpsPointQueue,  // eps-PQM1-4, discrete
  kLtm,
  kLqm,
  kVickrey,   // infinite-capacity PQM1/PQM3
  kAlpha,     // infinite-capacity eps-PQM1/3
  kEpsModel,  // infinite-capacity eps-PQM2/4
};

struct ModelVariant {
  Family family = Family::kPointQueue;
  PqModel pq = PqModel::kPqm1;  // point-queue families only
  Formulation formulation = Formulation::kA;

  friend bool operator==(const ModelVariant&, const ModelVariant&) = default;
};

/// "PQM1".."PQM4", "eps-PQM1".."eps-PQM4", "LTM", "LQM", "vickrey", "alpha",
/// "eps-model".
std::string model_name(const ModelVariant& m);
std::optional<ModelVariant> parse_model(std::string_view text,
                                        Formulation formulation = Formulation::kA);

bool needs_link(const ModelVariant& m);
bool needs_eps(const ModelVariant& m);
/// Vickrey, alpha and eps-model are defined for unbounded storage only.
bool needs_infinite_capacity(const ModelVariant& m);

struct RunConfig {
  ModelVariant model;
  Profile arrivals = Profile::constant(0.0);
  Profile service = Profile::constant(0.0);
  QueueSpec queue;
  std::optional<LinkParams> link;
  double dt = 0.0;
  double horizon = 0.0;
  std::optional<double> eps;
  Safety safety = Safety::kChecked;
};

/// Number of steps covering [0, horizon).
long long step_count(double dt, double horizon);

/// Structural checks always; stability/well-definedness bounds unless the
/// config is kUnchecked. Throws ConfigError.
void validate(const RunConfig& cfg);

/// Uniform-grid time series. Row i describes step [t_i, t_i + dt): the
/// state at t_i and the average fluxes over the step. For link models
/// `queue` holds the link occupancy F - G.
struct Trajectory {
  std::string label;
  double dt = 0.0;
  std::vector<double> time;
  std::vector<double> queue;
  std::vector<double> cum_in;
  std::vector<double> cum_out;
  std::vector<double> inflow;
  std::vector<double> outflow;
  // Exact state behind the double columns.
  std::vector<Volume> exact_queue;
  std::vector<Volume> exact_cum_in;
  std::vector<Volume> exact_cum_out;
  // State after the last step.
  Volume final_queue;
  Volume final_cum_in;
  Volume final_cum_out;

  std::size_t size() const { return time.size(); }
  void reserve(std::size_t n);
  void push(double t, Volume queue, Volume cum_in, Volume cum_out, const Transfer& step);
};

Trajectory simulate(const RunConfig& cfg);

struct SummaryStats {
  double max_queue = 0.0;
  std::optional<double> first_peak_time;
  std::optional<double> min_after_peak;
  std::optional<double> first_nonzero_time;
  std::optional<double> dissipation_start;
  std::optional<double> vanish_time;

  friend bool operator==(const SummaryStats&, const SummaryStats&) = default;
};

SummaryStats summarize(std::span<const double> time, std::span<const double> queue);
inline SummaryStats summarize(const Trajectory& tr) { return summarize(tr.time, tr.queue); }

/// Minimum queue over rows with time >= t0; +inf when there are none.
double min_queue_after(const Trajectory& tr, double t0);
/// Maximum queue over rows with time in [t0, t1].
double max_queue_between(const Trajectory& tr, double t0, double t1);

/// max_i |a.queue[i] - b.queue[i]|. Trajectories must share the grid.
double sup_distance(const Trajectory& a, const Trajectory& b);

}  // namespace pqkit
