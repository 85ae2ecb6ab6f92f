#include <future>

#include "cocaco/errors.hpp"
#include "cocaco/sim.hpp"

namespace cocaco {

namespace {

// Both modes of one sweep point, same seed.
SweepRow run_point(Scenario scenario, double x) {
  scenario.mode = Mode::Cocaco;
  const double cocaco = run(scenario).mean_delay_s;
  scenario.mode = Mode::Traditional;
  const double traditional = run(scenario).mean_delay_s;
  return SweepRow{x, cocaco, traditional};
}

std::vector<SweepRow> run_points(const std::vector<std::pair<Scenario, double>>& points) {
  for (const auto& [scenario, x] : points) validate(scenario);
  std::vector<std::future<SweepRow>> pending;
  pending.reserve(points.size());
  for (const auto& [scenario, x] : points) {
    pending.push_back(std::async(std::launch::async, run_point, scenario, x));
  }
  std::vector<SweepRow> rows;
  rows.reserve(points.size());
  for (auto& f : pending) rows.push_back(f.get());
  return rows;
}

}  // namespace

std::vector<SweepRow> experiment_fig3(const Scenario& base) {
  validate(base);
  if (base.workload.image_widths.empty()) {
    throw ParameterError("workload.image_widths must not be empty for the width sweep");
  }
  std::vector<std::pair<Scenario, double>> points;
  for (std::size_t width : base.workload.image_widths) {
    Scenario s = base;
    s.workload.kind = WorkloadKind::FixedImage;
    s.workload.image_width = width;
    points.emplace_back(s, static_cast<double>(width));
  }
  return run_points(points);
}

std::vector<SweepRow> experiment_fig4(const Scenario& base) {
  validate(base);
  std::vector<std::pair<Scenario, double>> points;
  for (std::size_t users : kSweepUserCounts) {
    Scenario s = base;
    s.n_users = users;
    s.workload.kind = WorkloadKind::FixedImage;
    s.workload.image_width = kConcurrencyImageWidth;
    s.workload.repeat_probability = 1.0;
    points.emplace_back(s, static_cast<double>(users));
  }
  return run_points(points);
}

}  // namespace cocaco
