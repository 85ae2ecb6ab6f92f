#include "cocaco/report.hpp"

#include <cstdio>
#include <fstream>
#include <system_error>

namespace cocaco {

std::string format_number(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

void write_decision_csv(std::ostream& out, const DecisionOutcome& outcome, int precision) {
  out << "location,T_LtoE_s,T_LtoC_s,hit\n"
      << to_string(outcome.location) << ',' << format_number(outcome.delay_edge_s, precision)
      << ',' << format_number(outcome.delay_cloud_s, precision) << ','
      << (outcome.cache_hit ? 1 : 0) << '\n';
}

void write_metrics_csv(std::ostream& out, const MetricsRecord& record, int precision) {
  out << "task_id,user_id,location,hit,delay_s\n";
  for (const TaskRecord& t : record.tasks) {
    out << t.task_id << ',' << t.user_id << ',' << to_string(t.location) << ','
        << (t.hit ? 1 : 0) << ',' << format_number(t.delay_s, precision) << '\n';
  }
  out << "# mean_delay_s," << format_number(record.mean_delay_s, precision) << '\n'
      << "# p50_delay_s," << format_number(record.p50_delay_s, precision) << '\n'
      << "# p95_delay_s," << format_number(record.p95_delay_s, precision) << '\n'
      << "# hit_ratio," << format_number(record.hit_ratio, precision) << '\n';
}

void write_cache_trace_csv(std::ostream& out, std::span<const CacheTraceRow> trace,
                           int precision) {
  out << "tick,best_score,hit,matched_id\n";
  for (const CacheTraceRow& row : trace) {
    out << row.tick << ',' << format_number(row.best_score, precision) << ','
        << (row.hit ? 1 : 0) << ',';
    if (row.matched) out << *row.matched;
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, int precision) {
  out << "x,cocaco_mean_s,traditional_mean_s\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.x, precision) << ',' << format_number(r.cocaco_mean_s, precision)
        << ',' << format_number(r.traditional_mean_s, precision) << '\n';
  }
}

void write_plot_data(std::ostream& out, std::span<const SweepRow> rows, int precision) {
  out << "# x cocaco_mean_s traditional_mean_s\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.x, precision) << ' ' << format_number(r.cocaco_mean_s, precision)
        << ' ' << format_number(r.traditional_mean_s, precision) << '\n';
  }
}

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw OutputError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw OutputError("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

}  // namespace cocaco
