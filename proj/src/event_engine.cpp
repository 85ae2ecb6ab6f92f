#include <algorithm>
#include <stdexcept>

#include "cocaco/errors.hpp"
#include "cocaco/event.hpp"
#include "cocaco/sim.hpp"

namespace cocaco {

ProcessorSharingLink::ProcessorSharingLink(double rate_bps) : rate_bps_(rate_bps) {
  if (!(rate_bps_ > 0.0)) throw ParameterError("processor-sharing link rate must be > 0");
}

void ProcessorSharingLink::advance(double now) {
  if (!flows_.empty()) {
    const auto n = static_cast<double>(flows_.size());
    virtual_bits_ += (now - clock_) * rate_bps_ / n;
    // Never run past the earliest finish tag; its completion is processed
    // through complete_next.
    virtual_bits_ = std::min(virtual_bits_, flows_.begin()->first);
  }
  clock_ = now;
}

void ProcessorSharingLink::join(std::size_t task, double bits) {
  flows_.emplace(virtual_bits_ + bits, task);
}

std::optional<std::pair<double, std::size_t>> ProcessorSharingLink::next_completion() const {
  if (flows_.empty()) return std::nullopt;
  const auto& [tag, task] = *flows_.begin();
  const auto n = static_cast<double>(flows_.size());
  return std::make_pair(clock_ + (tag - virtual_bits_) * n / rate_bps_, task);
}

std::pair<double, std::size_t> ProcessorSharingLink::complete_next() {
  const auto next = next_completion();
  if (!next) throw std::logic_error("complete_next on an idle link");
  virtual_bits_ = flows_.begin()->first;
  clock_ = next->first;
  flows_.erase(flows_.begin());
  if (flows_.empty()) virtual_bits_ = 0.0;
  return *next;
}

FifoServer::Admission FifoServer::enqueue(double now, double work) {
  const double start = std::max(now, free_at_);
  const double service = work / rate_;
  free_at_ = start + service;
  return Admission{start - now, service, free_at_};
}

namespace {

struct TaskState {
  double arrival_s = 0.0;
  DecisionOutcome outcome;
  PhaseBreakdown phases;
};

}  // namespace

MetricsRecord run_event(const Scenario& scenario) {
  const std::vector<IssuedTask> tasks = generate_tasks(scenario);
  const bool cocaco = scenario.mode == Mode::Cocaco;
  const double nominal_uplink = uplink_rate(scenario.channel);
  const LinkProfile nominal = make_link(scenario, nominal_uplink);
  const double downlink = scenario.link.downlink_bps;
  const double backhaul = scenario.link.backhaul_latency_s;

  CacheStore store(scenario.cache_capacity, scenario.metric);
  ProcessorSharingLink uplink(nominal_uplink);
  FifoServer edge(scenario.edge.processing_rate_cps);
  FifoServer cloud(scenario.cloud.processing_rate_cps);
  EventQueue queue;

  std::vector<TaskState> state(tasks.size());
  MetricsRecord record;
  record.tasks.resize(tasks.size());

  for (std::size_t user = 0; user < scenario.n_users; ++user) {
    queue.push(SimEvent{0.0, EventKind::Arrival, user});
  }

  auto send_result = [&](double now, std::size_t id) {
    state[id].phases.downlink_s = tasks[id].spec.result_bits / downlink;
    queue.push(SimEvent{now + state[id].phases.downlink_s, EventKind::DownlinkDone, id});
  };

  while (true) {
    const auto ps = uplink.next_completion();
    SimEvent event;
    if (!queue.empty() &&
        (!ps || queue.top() < SimEvent{ps->first, EventKind::UplinkDone, ps->second})) {
      event = queue.pop();
      uplink.advance(event.time);
    } else if (ps) {
      const auto [time, id] = uplink.complete_next();
      event = SimEvent{time, EventKind::UplinkDone, id};
    } else {
      break;
    }

    const std::size_t id = event.task;
    const double now = event.time;
    const TaskSpec& spec = tasks[id].spec;
    TaskState& st = state[id];

    switch (event.kind) {
      case EventKind::Arrival: {
        st.arrival_s = now;
        if (cocaco) {
          const LookupResult lookup = store.lookup(spec.features);
          record.cache_trace.push_back(CacheTraceRow{record.cache_trace.size(),
                                                     lookup.best_score, lookup.hit,
                                                     lookup.matched});
          st.outcome = choose_location(spec, lookup.hit, nominal, scenario.edge, scenario.cloud);
        } else {
          st.outcome.location = Location::Cloud;
          st.outcome.cache_hit = false;
        }
        uplink.join(id, spec.upload_bits);
        break;
      }
      case EventKind::UplinkDone: {
        st.phases.uplink_s = now - st.arrival_s;
        if (st.outcome.location == Location::Cloud) {
          st.phases.backhaul_s = backhaul;
          queue.push(SimEvent{now + backhaul, EventKind::BackhaulDone, id});
        } else if (st.outcome.cache_hit) {
          send_result(now, id);
        } else {
          const auto admission = edge.enqueue(now, spec.compute_cycles);
          st.phases.edge_wait_s = admission.wait_s;
          st.phases.edge_compute_s = admission.service_s;
          queue.push(SimEvent{admission.done_at, EventKind::EdgeComputeDone, id});
        }
        break;
      }
      case EventKind::BackhaulDone: {
        const auto admission = cloud.enqueue(now, spec.compute_cycles);
        st.phases.cloud_wait_s = admission.wait_s;
        st.phases.cloud_compute_s = admission.service_s;
        queue.push(SimEvent{admission.done_at, EventKind::CloudComputeDone, id});
        break;
      }
      case EventKind::EdgeComputeDone:
      case EventKind::CloudComputeDone: {
        if (cocaco) store.admit(spec.features, spec.result_bits);
        send_result(now, id);
        break;
      }
      case EventKind::DownlinkDone: {
        TaskRecord& row = record.tasks[id];
        row.task_id = id;
        row.user_id = tasks[id].user_id;
        row.location = st.outcome.location;
        row.hit = st.outcome.cache_hit;
        row.delay_s = now - st.arrival_s;
        row.phases = st.phases;
        const std::size_t next = id + scenario.n_users;
        if (next < tasks.size()) queue.push(SimEvent{now, EventKind::Arrival, next});
        break;
      }
    }
  }

  summarize(record);
  return record;
}

}  // namespace cocaco
