#include <algorithm>
#include <cmath>

#include "cocaco/errors.hpp"
#include "cocaco/sim.hpp"

namespace cocaco {

double percentile(std::vector<double> sample, double q) {
  if (sample.empty()) return 0.0;
  if (!(q > 0.0 && q <= 1.0)) throw ParameterError("percentile: q must lie in (0, 1]");
  std::sort(sample.begin(), sample.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sample.size())));
  return sample[std::clamp<std::size_t>(rank, 1, sample.size()) - 1];
}

void summarize(MetricsRecord& record) {
  std::vector<double> delays;
  delays.reserve(record.tasks.size());
  double sum = 0.0;
  std::size_t hits = 0;
  for (const TaskRecord& task : record.tasks) {
    delays.push_back(task.delay_s);
    sum += task.delay_s;
    hits += task.hit ? 1 : 0;
  }
  const auto n = static_cast<double>(record.tasks.size());
  record.mean_delay_s = record.tasks.empty() ? 0.0 : sum / n;
  record.hit_ratio = record.tasks.empty() ? 0.0 : static_cast<double>(hits) / n;
  record.p50_delay_s = percentile(delays, 0.50);
  record.p95_delay_s = percentile(std::move(delays), 0.95);
}

MetricsRecord run(const Scenario& scenario) {
  return scenario.engine == Engine::Analytic ? run_analytic(scenario) : run_event(scenario);
}

}  // namespace cocaco
