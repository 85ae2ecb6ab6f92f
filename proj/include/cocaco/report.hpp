#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "cocaco/offload.hpp"
#include "cocaco/sim.hpp"

namespace cocaco {

inline constexpr int kDefaultCsvPrecision = 9;

/// An output file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf %.{precision}g
std::string format_number(double value, int precision = kDefaultCsvPrecision);

/// location,T_LtoE_s,T_LtoC_s,hit
void write_decision_csv(std::ostream& out, const DecisionOutcome& outcome,
                        int precision = kDefaultCsvPrecision);

/// task_id,user_id,location,hit,delay_s rows followed by "# name,value"
/// footer rows for mean_delay_s, p50_delay_s, p95_delay_s, hit_ratio.
void write_metrics_csv(std::ostream& out, const MetricsRecord& record,
                       int precision = kDefaultCsvPrecision);

/// tick,best_score,hit,matched_id (matched_id empty on a miss)
void write_cache_trace_csv(std::ostream& out, std::span<const CacheTraceRow> trace,
                           int precision = kDefaultCsvPrecision);

/// x,cocaco_mean_s,traditional_mean_s
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows,
                     int precision = kDefaultCsvPrecision);

/// Whitespace-delimited columns with a '#' header line, for gnuplot.
void write_plot_data(std::ostream& out, std::span<const SweepRow> rows,
                     int precision = kDefaultCsvPrecision);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Throws OutputError on failure.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace cocaco
