#include <doctest.h>

#include <set>

#include "cocaco/errors.hpp"
#include "cocaco/sim.hpp"

using namespace cocaco;

namespace {

Scenario small_scenario() {
  Scenario s;
  s.channel = {1e6, 0.1, 1e-3, 1e-9};
  s.link = {1e8, 0.02};
  s.edge = {1e9};
  s.cloud = {1e10};
  s.seed = 123;
  return s;
}

}  // namespace

TEST_CASE("make_task maps image width to upload and compute size") {
  WorkloadSpec spec;
  spec.bits_per_pixel = 8;
  spec.cycles_per_pixel = 1000;
  spec.result_bits = 77;
  spec.feature_dim = 3;
  std::mt19937_64 rng(1);
  std::vector<FeatureVector> history;
  const TaskSpec t = make_task(16, spec, rng, history);
  CHECK(t.upload_bits == 2048.0);
  CHECK(t.compute_cycles == 256000.0);
  CHECK(t.result_bits == 77.0);
  CHECK(t.features.dimension() == 3);
  CHECK(history.size() == 1);

  CHECK_THROWS_AS(make_task(0, spec, rng, history), ParameterError);
}

TEST_CASE("make_task is deterministic for a given engine state") {
  WorkloadSpec spec;
  spec.repeat_probability = 0.4;
  std::mt19937_64 a(42), b(42);
  std::vector<FeatureVector> ha, hb;
  for (int i = 0; i < 20; ++i) {
    CHECK(make_task(32, spec, a, ha) == make_task(32, spec, b, hb));
  }
}

TEST_CASE("repeat probability controls feature reuse") {
  WorkloadSpec spec;
  std::mt19937_64 rng(9);
  std::vector<FeatureVector> history;

  spec.repeat_probability = 1.0;
  const TaskSpec first = make_task(16, spec, rng, history);
  for (int i = 0; i < 10; ++i) CHECK(make_task(16, spec, rng, history).features == first.features);
  CHECK(history.size() == 1);

  spec.repeat_probability = 0.0;
  for (int i = 0; i < 10; ++i) make_task(16, spec, rng, history);
  CHECK(history.size() == 11);
}

TEST_CASE("generate_tasks issues round-robin over users") {
  Scenario s = small_scenario();
  s.n_users = 3;
  s.tasks_per_user = 4;
  s.workload.kind = WorkloadKind::ImageSweep;
  s.workload.image_widths = {16, 32};
  const auto tasks = generate_tasks(s);
  REQUIRE(tasks.size() == 12);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    CHECK(tasks[i].task_id == i);
    CHECK(tasks[i].user_id == i % 3);
    CHECK(tasks[i].sequence == i / 3);
    const double width = tasks[i].sequence % 2 == 0 ? 16.0 : 32.0;
    CHECK(tasks[i].spec.upload_bits == width * width * s.workload.bits_per_pixel);
  }
  CHECK(generate_tasks(s) == generate_tasks(s));
}

TEST_CASE("scenario validation names the offending field") {
  Scenario s = small_scenario();
  s.n_users = 0;
  CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("scenario.n_users"), ParameterError);
  s = small_scenario();
  s.workload.repeat_probability = 1.5;
  CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("repeat_probability"), ParameterError);
  s = small_scenario();
  s.channel.noise_power_w = 0.0;
  CHECK_THROWS_WITH_AS(validate(s), doctest::Contains("noise_power_w"), ParameterError);
  s = small_scenario();
  s.channel.tx_power_w = 0.0;
  CHECK_THROWS_AS(validate(s), ParameterError);
}

TEST_CASE("percentile uses nearest rank") {
  CHECK(percentile({}, 0.5) == 0.0);
  CHECK(percentile({3.0, 1.0, 2.0}, 0.5) == 2.0);
  CHECK(percentile({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, 0.95) == 10.0);
  CHECK(percentile({1, 2, 3, 4}, 0.5) == 2.0);
  CHECK_THROWS_AS(percentile({1.0}, 0.0), ParameterError);
}
