#pragma once

#include <optional>
#include <string_view>

#include "cocaco/cache.hpp"

namespace cocaco {

/// One offloadable computation.
struct TaskSpec {
  double upload_bits = 0.0;     // R
  double compute_cycles = 0.0;  // D
  double result_bits = 0.0;     // F
  FeatureVector features;

  bool operator==(const TaskSpec&) const = default;
};

struct NodeProfile {
  double processing_rate_cps = 0.0;  // cycles/second

  bool operator==(const NodeProfile&) const = default;
};

struct LinkProfile {
  double uplink_bps = 0.0;
  double downlink_bps = 0.0;
  double backhaul_latency_s = 0.0;  // edge to cloud

  bool operator==(const LinkProfile&) const = default;
};

enum class Location { Edge, Cloud };

std::string_view to_string(Location location);

struct DecisionOutcome {
  Location location = Location::Edge;
  double delay_edge_s = 0.0;
  double delay_cloud_s = 0.0;
  double chosen_delay_s = 0.0;
  bool cache_hit = false;
};

void validate(const TaskSpec& task);
void validate(const NodeProfile& node);
void validate(const LinkProfile& link);

/// Local -> edge -> cloud and back: R/r_up + D/P_cloud + F/r_down + backhaul.
double delay_cloud(const TaskSpec& task, const LinkProfile& link, const NodeProfile& cloud);

/// Local -> edge and back. The compute term D/P_edge is skipped on a cache hit.
/// Evaluated as (R/r_up + F/r_down) + D/P_edge so that the miss delay is the
/// hit delay plus the compute term, bit for bit.
double delay_edge(const TaskSpec& task, const LinkProfile& link, const NodeProfile& edge,
                  bool hit);

/// Baseline where every task goes through the edge to the cloud.
double delay_traditional(const TaskSpec& task, const LinkProfile& link,
                         const NodeProfile& cloud);

/// Min-delay choice between the two branches for a known hit indicator.
/// Ties go to the edge.
DecisionOutcome choose_location(const TaskSpec& task, bool hit, const LinkProfile& link,
                                const NodeProfile& edge, const NodeProfile& cloud);

/// Full offloading decision: look the task up in the edge cache, pick the
/// cheaper branch, and on a miss admit the task's result into the cache
/// (results computed in the cloud return through the edge).
DecisionOutcome decide(const TaskSpec& task, CacheStore& store, const LinkProfile& link,
                       const NodeProfile& edge, const NodeProfile& cloud,
                       LookupResult* lookup_out = nullptr);

/// Compute demand at which the two miss-branch delays are equal:
/// backhaul * P_edge * P_cloud / (P_cloud - P_edge). Empty when the cloud is
/// not faster than the edge.
std::optional<double> crossover_demand(const LinkProfile& link, const NodeProfile& edge,
                                       const NodeProfile& cloud);

}  // namespace cocaco
