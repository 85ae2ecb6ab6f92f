#include "cocaco/cli.hpp"

#include <CLI11.hpp>
#include <sstream>

#include "cocaco/config.hpp"
#include "cocaco/errors.hpp"
#include "cocaco/report.hpp"

namespace cocaco::cli {

namespace {

// Runs `body`, mapping each failure class onto its exit code.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigIoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParameterError& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UndefinedAngleError& e) {
    err << "invalid feature vector: " << e.what() << '\n';
    return kExitValidation;
  }
}

ConfigFile load(const std::string& path) { return load_config(resolve_config_path(path)); }

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomically(path, content);
  }
}

}  // namespace

int cmd_decide(const std::string& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigFile config = load(config_path);
    if (!config.decide) throw ConfigError("task", "decide needs a [task] section");
    const Scenario& sc = config.scenario;

    CacheStore store(sc.cache_capacity, sc.metric);
    for (const FeatureVector& v : config.decide->cached) store.admit(v, 0.0);
    const LinkProfile link = make_link(sc, uplink_rate(sc.channel));
    const DecisionOutcome outcome = decide(config.decide->task, store, link, sc.edge, sc.cloud);
    write_decision_csv(out, outcome, config.output.csv_precision);
    return static_cast<int>(kExitOk);
  });
}

int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ConfigFile config = load(options.config_path);
    const std::string path = options.out_path.value_or(config.output.path);
    const bool trace = options.trace_cache || config.output.trace_cache;
    if (trace && path.empty()) {
      throw ConfigError("output.path", "cache tracing needs an output path (--out)");
    }

    const MetricsRecord record = run(config.scenario);
    std::ostringstream csv;
    write_metrics_csv(csv, record, config.output.csv_precision);
    emit(csv.str(), path, out);
    if (trace) {
      std::ostringstream trace_csv;
      write_cache_trace_csv(trace_csv, record.cache_trace, config.output.csv_precision);
      write_file_atomically(path + ".cache_trace.csv", trace_csv.str());
    }
    return static_cast<int>(kExitOk);
  });
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  if (options.experiment != "fig3" && options.experiment != "fig4") {
    err << "unknown experiment '" << options.experiment << "' (expected fig3 or fig4)\n";
    return kExitValidation;
  }
  return guarded(err, [&] {
    const ConfigFile config = load(options.config_path);
    const std::vector<SweepRow> rows = options.experiment == "fig3"
                                           ? experiment_fig3(config.scenario)
                                           : experiment_fig4(config.scenario);
    const int precision = config.output.csv_precision;
    std::ostringstream csv;
    write_sweep_csv(csv, rows, precision);
    emit(csv.str(), options.out_path.value_or(config.output.path), out);
    if (options.plot_data_path) {
      std::ostringstream dat;
      write_plot_data(dat, rows, precision);
      write_file_atomically(*options.plot_data_path, dat.str());
    }
    return static_cast<int>(kExitOk);
  });
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge/cloud computation-offloading simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string experiment;
  std::string plot_path;
  bool trace_cache = false;

  auto* decide_cmd = app.add_subcommand("decide", "One offloading decision as a CSV row");
  decide_cmd->add_option("--config", config_path, "Config file with a [task] section")
      ->required();

  auto* run_cmd = app.add_subcommand("run", "Run one scenario and write per-task CSV");
  run_cmd->add_option("--config", config_path, "Scenario config file")->required();
  run_cmd->add_option("--out", out_path, "Output CSV (default: [output] path or stdout)");
  run_cmd->add_flag("--trace-cache", trace_cache, "Also write <out>.cache_trace.csv");

  auto* sweep_cmd = app.add_subcommand("sweep", "Paired-mode sweep over widths or users");
  sweep_cmd->add_option("--experiment", experiment, "fig3 (image widths) or fig4 (users)")
      ->required();
  sweep_cmd->add_option("--config", config_path, "Base scenario config file")->required();
  sweep_cmd->add_option("--out", out_path, "Output CSV (default: [output] path or stdout)");
  sweep_cmd->add_option("--plot-data", plot_path, "Also write whitespace-delimited data here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e, out, err);
      return kExitOk;
    }
    err << e.what() << '\n';
    return kExitValidation;
  }

  auto optional_path = [](const std::string& p) {
    return p.empty() ? std::nullopt : std::optional<std::string>(p);
  };
  if (decide_cmd->parsed()) return cmd_decide(config_path, out, err);
  if (run_cmd->parsed()) {
    return cmd_run(RunOptions{config_path, optional_path(out_path), trace_cache}, out, err);
  }
  return cmd_sweep(
      SweepOptions{experiment, config_path, optional_path(out_path), optional_path(plot_path)},
      out, err);
}

}  // namespace cocaco::cli
