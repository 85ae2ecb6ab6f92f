#include "cocaco/offload.hpp"

#include <cmath>
#include <string>

#include "cocaco/errors.hpp"

namespace cocaco {

namespace {

void require_non_negative(double value, const char* what) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ParameterError(std::string(what) + " must be finite and >= 0");
  }
}

void require_positive(double value, const char* what) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ParameterError(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

std::string_view to_string(Location location) {
  return location == Location::Edge ? "Edge" : "Cloud";
}

void validate(const TaskSpec& task) {
  require_non_negative(task.upload_bits, "task upload_bits");
  require_non_negative(task.compute_cycles, "task compute_cycles");
  require_non_negative(task.result_bits, "task result_bits");
}

void validate(const NodeProfile& node) {
  require_positive(node.processing_rate_cps, "processing_rate_cps");
}

void validate(const LinkProfile& link) {
  require_positive(link.uplink_bps, "uplink_bps");
  require_positive(link.downlink_bps, "downlink_bps");
  require_non_negative(link.backhaul_latency_s, "backhaul_latency_s");
}

double delay_cloud(const TaskSpec& task, const LinkProfile& link, const NodeProfile& cloud) {
  validate(task);
  validate(link);
  validate(cloud);
  return task.upload_bits / link.uplink_bps + task.compute_cycles / cloud.processing_rate_cps +
         task.result_bits / link.downlink_bps + link.backhaul_latency_s;
}

double delay_edge(const TaskSpec& task, const LinkProfile& link, const NodeProfile& edge,
                  bool hit) {
  validate(task);
  validate(link);
  validate(edge);
  const double transfer = task.upload_bits / link.uplink_bps + task.result_bits / link.downlink_bps;
  if (hit) return transfer;
  return transfer + task.compute_cycles / edge.processing_rate_cps;
}

double delay_traditional(const TaskSpec& task, const LinkProfile& link,
                         const NodeProfile& cloud) {
  return delay_cloud(task, link, cloud);
}

DecisionOutcome choose_location(const TaskSpec& task, bool hit, const LinkProfile& link,
                                const NodeProfile& edge, const NodeProfile& cloud) {
  DecisionOutcome out;
  out.cache_hit = hit;
  out.delay_edge_s = delay_edge(task, link, edge, hit);
  out.delay_cloud_s = delay_cloud(task, link, cloud);
  if (out.delay_edge_s <= out.delay_cloud_s) {
    out.location = Location::Edge;
    out.chosen_delay_s = out.delay_edge_s;
  } else {
    out.location = Location::Cloud;
    out.chosen_delay_s = out.delay_cloud_s;
  }
  return out;
}

DecisionOutcome decide(const TaskSpec& task, CacheStore& store, const LinkProfile& link,
                       const NodeProfile& edge, const NodeProfile& cloud,
                       LookupResult* lookup_out) {
  validate(task);
  validate(link);
  validate(edge);
  validate(cloud);
  const LookupResult lookup = store.lookup(task.features);
  if (lookup_out != nullptr) *lookup_out = lookup;
  DecisionOutcome out = choose_location(task, lookup.hit, link, edge, cloud);
  if (!lookup.hit) store.admit(task.features, task.result_bits);
  return out;
}

std::optional<double> crossover_demand(const LinkProfile& link, const NodeProfile& edge,
                                       const NodeProfile& cloud) {
  validate(link);
  validate(edge);
  validate(cloud);
  const double pe = edge.processing_rate_cps;
  const double pc = cloud.processing_rate_cps;
  if (pc <= pe) return std::nullopt;
  return link.backhaul_latency_s * pe * pc / (pc - pe);
}

}  // namespace cocaco
