#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace cocaco::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 2,          // config missing or unreadable
  kExitValidation = 3,  // bad config, bad arguments
  kExitOutput = 4,      // output could not be written
};

struct RunOptions {
  std::string config_path;
  std::optional<std::string> out_path;  // overrides [output] path
  bool trace_cache = false;             // ORed with [output] trace_cache
};

struct SweepOptions {
  std::string experiment;  // fig3 | fig4
  std::string config_path;
  std::optional<std::string> out_path;
  std::optional<std::string> plot_data_path;
};

int cmd_decide(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);

/// Full command line: `<prog> decide|run|sweep [flags]`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cocaco::cli
