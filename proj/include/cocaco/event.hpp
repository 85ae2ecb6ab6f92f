#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <set>
#include <utility>
#include <vector>

namespace cocaco {

// Declaration order is the tie-break order for simultaneous events.
enum class EventKind {
  Arrival,
  UplinkDone,
  EdgeComputeDone,
  BackhaulDone,
  CloudComputeDone,
  DownlinkDone,
};

struct SimEvent {
  double time = 0.0;
  EventKind kind = EventKind::Arrival;
  std::size_t task = 0;

  auto operator<=>(const SimEvent&) const = default;
};

/// Min-queue over (time, kind, task).
class EventQueue {
 public:
  void push(SimEvent event) { heap_.push(event); }
  bool empty() const { return heap_.empty(); }
  const SimEvent& top() const { return heap_.top(); }
  SimEvent pop() {
    SimEvent e = heap_.top();
    heap_.pop();
    return e;
  }

 private:
  std::priority_queue<SimEvent, std::vector<SimEvent>, std::greater<>> heap_;
};

/// Egalitarian processor sharing of one link among all active transfers.
///
/// Tracks the per-flow service ("virtual bits") delivered so far; a flow that
/// joins with `bits` remaining finishes once the virtual counter reaches its
/// finish tag. The counter resets whenever the link goes idle.
class ProcessorSharingLink {
 public:
  explicit ProcessorSharingLink(double rate_bps);

  /// Moves the link clock forward to `now`.
  void advance(double now);

  /// Adds a transfer at the current link clock (call advance first).
  void join(std::size_t task, double bits);

  /// Earliest (completion time, task); ties by lowest task.
  std::optional<std::pair<double, std::size_t>> next_completion() const;

  /// Completes the transfer reported by next_completion and advances to its time.
  std::pair<double, std::size_t> complete_next();

  std::size_t active() const { return flows_.size(); }
  double rate_bps() const { return rate_bps_; }

 private:
  double rate_bps_;
  double virtual_bits_ = 0.0;
  double clock_ = 0.0;
  std::set<std::pair<double, std::size_t>> flows_;  // (finish tag, task)
};

/// Single-server FIFO queue with deterministic service times.
class FifoServer {
 public:
  explicit FifoServer(double rate) : rate_(rate) {}

  struct Admission {
    double wait_s;
    double service_s;
    double done_at;
  };

  /// Admission of a job of `work` units arriving at `now`; jobs are served in
  /// call order.
  Admission enqueue(double now, double work);

 private:
  double rate_;
  double free_at_ = 0.0;
};

}  // namespace cocaco
