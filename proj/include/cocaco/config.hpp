#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cocaco/offload.hpp"
#include "cocaco/sim.hpp"

namespace cocaco {

/// Environment variable naming the directory searched for relative config
/// paths that do not exist in the working directory.
inline constexpr const char* kConfigDirEnv = "COCACO_CONFIG_DIR";

/// Invalid config content. `field()` is "section.key" when the problem is
/// tied to one field, empty otherwise.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Config file missing or unreadable.
class ConfigIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string path;  // empty: standard output
  bool trace_cache = false;
  int csv_precision = 9;

  bool operator==(const OutputOptions&) const = default;
};

/// Inputs of a one-shot decision: the task plus vectors preloaded into the
/// edge cache (in insertion order).
struct DecideInput {
  TaskSpec task;
  std::vector<FeatureVector> cached;

  bool operator==(const DecideInput&) const = default;
};

struct ConfigFile {
  Scenario scenario;
  OutputOptions output;
  std::optional<DecideInput> decide;

  bool operator==(const ConfigFile&) const = default;
};

/// Parses a TOML-style config. Sections: scenario, channel, link, edge,
/// cloud, workload, output, task, cache. Unknown sections or keys, missing
/// required keys, type mismatches and out-of-domain values all throw
/// ConfigError.
ConfigFile parse_config(std::string_view text);

ConfigFile load_config(const std::filesystem::path& path);

/// Inverse of parse_config; doubles are written with 17 significant digits.
std::string serialize_config(const ConfigFile& config);

/// `arg` as given if it exists or is absolute, otherwise looked up under
/// $COCACO_CONFIG_DIR when that is set.
std::filesystem::path resolve_config_path(std::string_view arg);

}  // namespace cocaco
