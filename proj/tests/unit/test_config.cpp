#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "cocaco/config.hpp"

using namespace cocaco;

namespace {

const std::string kSource = COCACO_SOURCE_DIR;

const char* kMinimal = R"(
[scenario]
mode = "traditional"   # baseline
engine = "event"
n_users = 3
tasks_per_user = 2
cache_capacity = 5
metric = "cosine"
seed = 18446744073709551615

[channel]
bandwidth_hz = 2e6
tx_power_w = 0.2
channel_gain = 0.001
noise_power_w = 1e-9

[link]
downlink_bps = 5e7
backhaul_latency_s = 0.01

[edge]
processing_rate_cps = 1e9

[cloud]
processing_rate_cps = 8e9

[workload]
kind = "fixed_image"
image_width = 48
bits_per_pixel = 8
cycles_per_pixel = 100
result_bits = 512
feature_dim = 4
repeat_probability = 0.25
)";

std::string without_line(std::string text, const std::string& needle) {
  const auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  text.erase(pos, text.find('\n', pos) - pos);
  return text;
}

double random_positive(std::mt19937_64& rng) {
  return std::ldexp(1.0 + uniform01(rng), static_cast<int>(rng() % 60) - 30);
}

}  // namespace

TEST_CASE("parse a complete scenario config") {
  const ConfigFile c = parse_config(kMinimal);
  const Scenario& s = c.scenario;
  CHECK(s.mode == Mode::Traditional);
  CHECK(s.engine == Engine::Event);
  CHECK(s.n_users == 3);
  CHECK(s.tasks_per_user == 2);
  CHECK(s.cache_capacity == 5);
  CHECK(s.metric == SimilarityMetric::Cosine);
  CHECK(s.seed == 18446744073709551615ULL);
  CHECK(s.channel == ChannelParams{2e6, 0.2, 0.001, 1e-9});
  CHECK(s.link == FixedLink{5e7, 0.01});
  CHECK(s.edge.processing_rate_cps == 1e9);
  CHECK(s.cloud.processing_rate_cps == 8e9);
  CHECK(s.workload.kind == WorkloadKind::FixedImage);
  CHECK(s.workload.image_width == 48);
  CHECK(s.workload.repeat_probability == 0.25);
  CHECK(c.output == OutputOptions{});
  CHECK_FALSE(c.decide);
}

TEST_CASE("missing, unknown and malformed fields are rejected by name") {
  auto field_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<no error>");
  };
  CHECK(field_of(without_line(kMinimal, "noise_power_w")) == "channel.noise_power_w");
  CHECK(field_of(without_line(kMinimal, "seed")) == "scenario.seed");
  CHECK(field_of(without_line(kMinimal, "image_width")) == "workload.image_width");
  CHECK(field_of(std::string(kMinimal) + "colour = 3\n") == "workload.colour");
  CHECK(field_of(std::string(kMinimal) + "[extras]\nx = 1\n") == "extras");
  CHECK(field_of(std::string(kMinimal).replace(std::string(kMinimal).find("n_users = 3"), 11,
                                               "n_users = 2.5")) == "scenario.n_users");
  CHECK(field_of(std::string(kMinimal).replace(std::string(kMinimal).find("\"cosine\""), 8,
                                               "\"manhattan\"")) == "scenario.metric");
  CHECK(field_of(std::string(kMinimal).replace(std::string(kMinimal).find("0.25"), 4, "1.5")) ==
        "workload.repeat_probability");
  CHECK(field_of(std::string(kMinimal).replace(std::string(kMinimal).find("1e-9"), 4, "0")) ==
        "channel.noise_power_w");
  CHECK_THROWS_AS(parse_config("[channel]\nbandwidth_hz = \n"), ConfigError);
  CHECK_THROWS_AS(parse_config("x = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[a]\n[a]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "feature_dim = 4\n"), ConfigError);
}

TEST_CASE("decide configs carry a task and preloaded cache") {
  const ConfigFile c = load_config(kSource + "/configs/decide_hit.toml");
  REQUIRE(c.decide);
  CHECK(c.decide->task.upload_bits == 6144.0);
  CHECK(c.decide->task.features == FeatureVector{0.5, -1.25, 2.0, 0.75});
  REQUIRE(c.decide->cached.size() == 2);
  CHECK(c.decide->cached[1] == FeatureVector{0.5, -1.25, 2.5, 0.75});

  std::string text = "[scenario]\ncache_capacity = 2\nmetric = \"cosine\"\n"
                     "[channel]\nbandwidth_hz = 1\ntx_power_w = 1\nchannel_gain = 1\n"
                     "noise_power_w = 1\n[link]\ndownlink_bps = 1\nbackhaul_latency_s = 0\n"
                     "[edge]\nprocessing_rate_cps = 1\n[cloud]\nprocessing_rate_cps = 2\n"
                     "[task]\nupload_bits = 1\ncompute_cycles = 1\nresult_bits = 1\n"
                     "features = [1, 2]\n";
  CHECK(parse_config(text).decide.has_value());
  try {
    parse_config(text + "[cache]\nentries = [[1, 2, 3]]\n");
    FAIL("expected a dimension error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "cache.entries[0]");
  }
}

TEST_CASE("shipped configs survive a serialize/parse round trip") {
  for (const char* name : {"fig3", "fig4", "decide_example", "decide_hit", "single_user_event",
                           "single_user_analytic"}) {
    const ConfigFile c = load_config(kSource + "/configs/" + name + ".toml");
    CHECK(parse_config(serialize_config(c)) == c);
  }
}

TEST_CASE("random configs survive a serialize/parse round trip") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 200; ++i) {
    ConfigFile c;
    Scenario& s = c.scenario;
    s.mode = rng() % 2 ? Mode::Cocaco : Mode::Traditional;
    s.engine = rng() % 2 ? Engine::Analytic : Engine::Event;
    s.n_users = 1 + rng() % 50;
    s.tasks_per_user = 1 + rng() % 50;
    s.cache_capacity = 1 + rng() % 500;
    s.metric = rng() % 2 ? SimilarityMetric::Cosine : SimilarityMetric::NormalizedEuclidean;
    s.seed = rng();
    s.channel = {random_positive(rng), 0.1 * (1.0 + uniform01(rng)),
                 1e-3 * (1.0 + uniform01(rng)), 1e-9 * (1.0 + uniform01(rng))};
    s.link = {random_positive(rng), uniform01(rng)};
    s.edge = {random_positive(rng)};
    s.cloud = {random_positive(rng)};
    s.workload.kind = rng() % 2 ? WorkloadKind::ImageSweep : WorkloadKind::FixedImage;
    s.workload.image_width = 1 + rng() % 300;
    s.workload.image_widths.resize(1 + rng() % 12);
    for (auto& w : s.workload.image_widths) w = 1 + rng() % 300;
    s.workload.bits_per_pixel = random_positive(rng);
    s.workload.cycles_per_pixel = random_positive(rng);
    s.workload.result_bits = random_positive(rng);
    s.workload.feature_dim = 1 + rng() % 32;
    s.workload.repeat_probability = uniform01(rng);
    c.output.path = rng() % 2 ? "out dir/\"quoted\"\\x.csv" : "";
    c.output.trace_cache = rng() % 2;
    c.output.csv_precision = 1 + static_cast<int>(rng() % 17);
    if (rng() % 2) {
      std::vector<double> f(1 + rng() % 6);
      for (double& x : f) x = uniform01(rng) * 20.0 - 10.0;
      DecideInput in{TaskSpec{random_positive(rng), random_positive(rng), random_positive(rng),
                              FeatureVector(f)},
                     {}};
      for (std::size_t k = rng() % 4; k > 0; --k) {
        for (double& x : f) x = -x + uniform01(rng);
        in.cached.emplace_back(f);
      }
      c.decide = in;
    }
    const std::string text = serialize_config(c);
    CHECK(parse_config(text) == c);
  }
}

TEST_CASE("relative config paths fall back to the config directory variable") {
  ::unsetenv(kConfigDirEnv);
  CHECK(resolve_config_path("fig3.toml") == std::filesystem::path("fig3.toml"));
  ::setenv(kConfigDirEnv, (kSource + "/configs").c_str(), 1);
  CHECK(resolve_config_path("fig3.toml") == std::filesystem::path(kSource + "/configs/fig3.toml"));
  CHECK(resolve_config_path("/abs/none.toml") == std::filesystem::path("/abs/none.toml"));
  ::unsetenv(kConfigDirEnv);
  CHECK_THROWS_AS(load_config("/definitely/not/here.toml"), ConfigIoError);
}
