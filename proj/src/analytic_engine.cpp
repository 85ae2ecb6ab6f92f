#include "cocaco/sim.hpp"

namespace cocaco {

namespace {

PhaseBreakdown phases_for(const TaskSpec& task, const DecisionOutcome& outcome,
                          const LinkProfile& link, const NodeProfile& edge,
                          const NodeProfile& cloud) {
  PhaseBreakdown p;
  p.uplink_s = task.upload_bits / link.uplink_bps;
  p.downlink_s = task.result_bits / link.downlink_bps;
  if (outcome.location == Location::Cloud) {
    p.backhaul_s = link.backhaul_latency_s;
    p.cloud_compute_s = task.compute_cycles / cloud.processing_rate_cps;
  } else if (!outcome.cache_hit) {
    p.edge_compute_s = task.compute_cycles / edge.processing_rate_cps;
  }
  return p;
}

}  // namespace

MetricsRecord run_analytic(const Scenario& scenario) {
  const std::vector<IssuedTask> tasks = generate_tasks(scenario);
  const LinkProfile link = make_link(scenario, shared_uplink_rate(scenario.channel, scenario.n_users));
  CacheStore store(scenario.cache_capacity, scenario.metric);

  MetricsRecord record;
  record.tasks.reserve(tasks.size());
  for (const IssuedTask& issued : tasks) {
    TaskRecord row;
    row.task_id = issued.task_id;
    row.user_id = issued.user_id;

    DecisionOutcome outcome;
    if (scenario.mode == Mode::Cocaco) {
      LookupResult lookup;
      outcome = decide(issued.spec, store, link, scenario.edge, scenario.cloud, &lookup);
      record.cache_trace.push_back(
          CacheTraceRow{record.cache_trace.size(), lookup.best_score, lookup.hit, lookup.matched});
    } else {
      outcome.location = Location::Cloud;
      outcome.delay_cloud_s = delay_traditional(issued.spec, link, scenario.cloud);
      outcome.chosen_delay_s = outcome.delay_cloud_s;
    }
    row.location = outcome.location;
    row.hit = outcome.cache_hit;
    row.delay_s = outcome.chosen_delay_s;
    row.phases = phases_for(issued.spec, outcome, link, scenario.edge, scenario.cloud);
    record.tasks.push_back(row);
  }
  summarize(record);
  return record;
}

}  // namespace cocaco
