#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "cocaco/cache.hpp"
#include "cocaco/channel.hpp"
#include "cocaco/offload.hpp"

namespace cocaco {

// Image widths of the task-size sweep.
inline constexpr std::size_t kSweepImageWidths[] = {16, 32, 48, 64, 80, 96, 112, 128, 144, 160};
// User counts of the concurrency sweep, run with 16x16 images.
inline constexpr std::size_t kSweepUserCounts[] = {5, 10, 15, 20, 25, 30, 35};
inline constexpr std::size_t kConcurrencyImageWidth = 16;

enum class WorkloadKind { ImageSweep, FixedImage };
enum class Mode { Cocaco, Traditional };
enum class Engine { Analytic, Event };

std::string_view to_string(WorkloadKind kind);
std::string_view to_string(Mode mode);
std::string_view to_string(Engine engine);
std::optional<WorkloadKind> parse_workload_kind(std::string_view name);
std::optional<Mode> parse_mode(std::string_view name);
std::optional<Engine> parse_engine(std::string_view name);

/// Synthetic image-recognition workload. A width w image uploads
/// w*w*bits_per_pixel bits and costs w*w*cycles_per_pixel cycles.
/// For ImageSweep, a user's k-th task uses image_widths[k % size].
struct WorkloadSpec {
  WorkloadKind kind = WorkloadKind::FixedImage;
  std::vector<std::size_t> image_widths{std::begin(kSweepImageWidths),
                                        std::end(kSweepImageWidths)};
  std::size_t image_width = 16;
  double bits_per_pixel = 24.0;
  double cycles_per_pixel = 5000.0;
  double result_bits = 1024.0;
  std::size_t feature_dim = 16;
  double repeat_probability = 0.0;

  bool operator==(const WorkloadSpec&) const = default;
};

/// Downlink and backhaul do not depend on the channel or on concurrency.
struct FixedLink {
  double downlink_bps = 0.0;
  double backhaul_latency_s = 0.0;

  bool operator==(const FixedLink&) const = default;
};

struct Scenario {
  Mode mode = Mode::Cocaco;
  Engine engine = Engine::Analytic;
  std::size_t n_users = 1;
  std::size_t tasks_per_user = 1;
  ChannelParams channel;
  FixedLink link;
  NodeProfile edge;
  NodeProfile cloud;
  std::size_t cache_capacity = 64;
  SimilarityMetric metric = SimilarityMetric::NormalizedEuclidean;
  WorkloadSpec workload;
  std::uint64_t seed = 0;

  bool operator==(const Scenario&) const = default;
};

/// Throws ParameterError naming the first offending field.
void validate(const WorkloadSpec& workload);
void validate(const Scenario& scenario);

/// Link profile for a given uplink rate and the scenario's fixed terms.
LinkProfile make_link(const Scenario& scenario, double uplink_bps);

// ---------------------------------------------------------------------------
// Workload generation

/// Portable uniform draw in [0, 1) from the top 53 bits of one engine output.
double uniform01(std::mt19937_64& rng);

/// One task of width `width`. Draws a repeat coin; on success (and if
/// `history` is non-empty) reuses a uniformly chosen earlier feature vector,
/// otherwise draws a fresh standard-normal vector and appends it to `history`.
TaskSpec make_task(std::size_t width, const WorkloadSpec& spec, std::mt19937_64& rng,
                   std::vector<FeatureVector>& history);

struct IssuedTask {
  std::size_t task_id = 0;
  std::size_t user_id = 0;
  std::size_t sequence = 0;  // index within the user's closed loop
  TaskSpec spec;

  bool operator==(const IssuedTask&) const = default;
};

/// All tasks of a scenario in round-robin issue order (user 0 task 0,
/// user 1 task 0, ...). task_id equals the position in this list.
std::vector<IssuedTask> generate_tasks(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Metrics

/// Where a task's time went. Waits are zero in the analytic engine.
struct PhaseBreakdown {
  double uplink_s = 0.0;
  double edge_wait_s = 0.0;
  double edge_compute_s = 0.0;
  double backhaul_s = 0.0;
  double cloud_wait_s = 0.0;
  double cloud_compute_s = 0.0;
  double downlink_s = 0.0;

  double total() const {
    return uplink_s + edge_wait_s + edge_compute_s + backhaul_s + cloud_wait_s +
           cloud_compute_s + downlink_s;
  }
};

struct TaskRecord {
  std::size_t task_id = 0;
  std::size_t user_id = 0;
  Location location = Location::Cloud;
  bool hit = false;
  double delay_s = 0.0;
  PhaseBreakdown phases;
};

struct CacheTraceRow {
  std::size_t tick = 0;
  double best_score = 0.0;
  bool hit = false;
  std::optional<EntryId> matched;
};

struct MetricsRecord {
  std::vector<TaskRecord> tasks;  // ordered by task_id
  double mean_delay_s = 0.0;
  double p50_delay_s = 0.0;
  double p95_delay_s = 0.0;
  double hit_ratio = 0.0;
  std::vector<CacheTraceRow> cache_trace;
};

/// Nearest-rank percentile of an unsorted sample, q in (0, 1].
double percentile(std::vector<double> sample, double q);

/// Fills the aggregate fields from `record.tasks`.
void summarize(MetricsRecord& record);

// ---------------------------------------------------------------------------
// Engines

/// Closed-form evaluation of every task with the uplink split equally among
/// all users. The cache evolves in issue order.
MetricsRecord run_analytic(const Scenario& scenario);

/// Discrete-event run: processor-sharing uplink, FIFO edge and cloud
/// servers, fixed backhaul, uncontended downlink, closed-loop users.
MetricsRecord run_event(const Scenario& scenario);

/// Dispatches on scenario.engine.
MetricsRecord run(const Scenario& scenario);

// ---------------------------------------------------------------------------
// Experiments

struct SweepRow {
  double x = 0.0;
  double cocaco_mean_s = 0.0;
  double traditional_mean_s = 0.0;
};

/// Mean delay of both modes for every width in base.workload.image_widths,
/// each point a fixed-image run with the base seed.
std::vector<SweepRow> experiment_fig3(const Scenario& base);

/// Mean delay of both modes for every user count in kSweepUserCounts with
/// 16x16 images and every request carrying the same content.
std::vector<SweepRow> experiment_fig4(const Scenario& base);

}  // namespace cocaco
