#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cocaco/errors.hpp"
#include "cocaco/sim.hpp"

namespace cocaco {

std::string_view to_string(WorkloadKind kind) {
  return kind == WorkloadKind::ImageSweep ? "image_sweep" : "fixed_image";
}

std::string_view to_string(Mode mode) {
  return mode == Mode::Cocaco ? "cocaco" : "traditional";
}

std::string_view to_string(Engine engine) {
  return engine == Engine::Analytic ? "analytic" : "event";
}

std::optional<WorkloadKind> parse_workload_kind(std::string_view name) {
  if (name == "image_sweep") return WorkloadKind::ImageSweep;
  if (name == "fixed_image") return WorkloadKind::FixedImage;
  return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "cocaco") return Mode::Cocaco;
  if (name == "traditional") return Mode::Traditional;
  return std::nullopt;
}

std::optional<Engine> parse_engine(std::string_view name) {
  if (name == "analytic") return Engine::Analytic;
  if (name == "event") return Engine::Event;
  return std::nullopt;
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ParameterError(message);
}

bool non_negative(double x) { return std::isfinite(x) && x >= 0.0; }
bool positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void validate(const WorkloadSpec& workload) {
  require(non_negative(workload.bits_per_pixel), "workload.bits_per_pixel must be finite and >= 0");
  require(non_negative(workload.cycles_per_pixel),
          "workload.cycles_per_pixel must be finite and >= 0");
  require(non_negative(workload.result_bits), "workload.result_bits must be finite and >= 0");
  require(workload.feature_dim >= 1, "workload.feature_dim must be >= 1");
  require(std::isfinite(workload.repeat_probability) && workload.repeat_probability >= 0.0 &&
              workload.repeat_probability <= 1.0,
          "workload.repeat_probability must lie in [0, 1]");
  if (workload.kind == WorkloadKind::FixedImage) {
    require(workload.image_width >= 1, "workload.image_width must be >= 1");
  } else {
    require(!workload.image_widths.empty(), "workload.image_widths must not be empty");
    for (std::size_t w : workload.image_widths) {
      require(w >= 1, "workload.image_widths entries must be >= 1");
    }
  }
}

void validate(const Scenario& scenario) {
  require(scenario.n_users >= 1, "scenario.n_users must be >= 1");
  require(scenario.tasks_per_user >= 1, "scenario.tasks_per_user must be >= 1");
  require(scenario.cache_capacity >= 1, "scenario.cache_capacity must be >= 1");
  validate(scenario.channel);
  require(positive(scenario.link.downlink_bps), "link.downlink_bps must be finite and > 0");
  require(non_negative(scenario.link.backhaul_latency_s),
          "link.backhaul_latency_s must be finite and >= 0");
  require(positive(scenario.edge.processing_rate_cps),
          "edge.processing_rate_cps must be finite and > 0");
  require(positive(scenario.cloud.processing_rate_cps),
          "cloud.processing_rate_cps must be finite and > 0");
  validate(scenario.workload);
  require(uplink_rate(scenario.channel) > 0.0,
          "channel.tx_power_w uplink rate is zero (tx_power_w or channel_gain is 0)");
}

LinkProfile make_link(const Scenario& scenario, double uplink_bps) {
  return LinkProfile{uplink_bps, scenario.link.downlink_bps, scenario.link.backhaul_latency_s};
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

double standard_normal(std::mt19937_64& rng) {
  const double u1 = 1.0 - uniform01(rng);  // (0, 1]
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

TaskSpec make_task(std::size_t width, const WorkloadSpec& spec, std::mt19937_64& rng,
                   std::vector<FeatureVector>& history) {
  if (width == 0) throw ParameterError("make_task: image width must be >= 1");
  const double pixels = static_cast<double>(width) * static_cast<double>(width);

  const bool repeat = uniform01(rng) < spec.repeat_probability;
  std::optional<FeatureVector> features;
  if (repeat && !history.empty()) {
    auto index = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(history.size()));
    features = history[std::min(index, history.size() - 1)];
  } else {
    std::vector<double> values(spec.feature_dim);
    for (double& v : values) v = standard_normal(rng);
    features.emplace(std::move(values));
    history.push_back(*features);
  }
  return TaskSpec{pixels * spec.bits_per_pixel, pixels * spec.cycles_per_pixel, spec.result_bits,
                  std::move(*features)};
}

std::vector<IssuedTask> generate_tasks(const Scenario& scenario) {
  validate(scenario);
  const WorkloadSpec& workload = scenario.workload;
  std::mt19937_64 rng(scenario.seed);
  std::vector<FeatureVector> history;

  std::vector<IssuedTask> tasks;
  tasks.reserve(scenario.n_users * scenario.tasks_per_user);
  for (std::size_t k = 0; k < scenario.tasks_per_user; ++k) {
    const std::size_t width = workload.kind == WorkloadKind::FixedImage
                                  ? workload.image_width
                                  : workload.image_widths[k % workload.image_widths.size()];
    for (std::size_t user = 0; user < scenario.n_users; ++user) {
      tasks.push_back(IssuedTask{tasks.size(), user, k, make_task(width, workload, rng, history)});
    }
  }
  return tasks;
}

}  // namespace cocaco
