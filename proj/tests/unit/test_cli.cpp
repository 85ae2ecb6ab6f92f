#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cocaco/cli.hpp"

namespace fs = std::filesystem;
using namespace cocaco::cli;

namespace {

const std::string kSource = COCACO_SOURCE_DIR;
const std::string kConfigs = kSource + "/configs/";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cocaco");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir() {
  fs::path dir = fs::temp_directory_path() / "cocaco_cli_tests";
  fs::create_directories(dir);
  return dir;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

double footer_value(const std::string& csv, const std::string& key) {
  for (const auto& line : lines_of(csv)) {
    const std::string prefix = "# " + key + ",";
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
  }
  FAIL("footer " << key << " not found");
  return 0.0;
}

std::vector<std::vector<double>> sweep_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  auto lines = lines_of(csv);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::vector<double> row;
    std::istringstream cells(lines[i]);
    for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("decide prints one CSV row") {
  auto r = invoke({"decide", "--config", kConfigs + "decide_example.toml"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "location,T_LtoE_s,T_LtoC_s,hit\nEdge,0.00221301033,0.0210610103,0\n");

  r = invoke({"decide", "--config", kConfigs + "decide_hit.toml"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "location,T_LtoE_s,T_LtoC_s,hit\nEdge,0.000933010329,0.0210610103,1\n");
}

TEST_CASE("decide error paths") {
  CHECK(invoke({"decide", "--config", "/no/such/file.toml"}).code == kExitIo);

  std::string text = slurp(kConfigs + "decide_example.toml");
  text.erase(text.find("noise_power_w"), text.find('\n', text.find("noise_power_w")) -
                                             text.find("noise_power_w"));
  auto r = invoke({"decide", "--config", write_temp("no_noise.toml", text).string()});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("channel.noise_power_w") != std::string::npos);

  r = invoke({"decide", "--config", kConfigs + "fig3.toml"});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("[task]") != std::string::npos);
}

TEST_CASE("run writes per-task rows and aggregate footer") {
  std::string text = slurp(kConfigs + "single_user_analytic.toml");
  text.replace(text.find("tasks_per_user = 12"), 19, "tasks_per_user = 1");
  auto r = invoke({"run", "--config", write_temp("one_task.toml", text).string()});
  CHECK(r.code == kExitOk);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "task_id,user_id,location,hit,delay_s");
  CHECK(lines[1].rfind("0,0,", 0) == 0);
  CHECK(lines[2].rfind("# mean_delay_s,", 0) == 0);
}

TEST_CASE("run output is byte-identical across invocations") {
  const fs::path a = scratch_dir() / "run_a.csv";
  const fs::path b = scratch_dir() / "run_b.csv";
  for (const auto& out : {a, b}) {
    CHECK(invoke({"run", "--config", kConfigs + "fig4.toml", "--out", out.string()}).code ==
          kExitOk);
  }
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  CHECK_FALSE(fs::exists(a.string() + ".tmp"));
}

TEST_CASE("event and analytic single-user runs agree") {
  const auto event = invoke({"run", "--config", kConfigs + "single_user_event.toml"});
  const auto analytic = invoke({"run", "--config", kConfigs + "single_user_analytic.toml"});
  REQUIRE(event.code == kExitOk);
  REQUIRE(analytic.code == kExitOk);
  const double e = footer_value(event.out, "mean_delay_s");
  const double a = footer_value(analytic.out, "mean_delay_s");
  CHECK(std::abs(e - a) <= 1e-9 * a);
}

TEST_CASE("run cache trace and output errors") {
  const fs::path out = scratch_dir() / "traced.csv";
  auto r = invoke({"run", "--config", kConfigs + "single_user_event.toml", "--out",
                   out.string(), "--trace-cache"});
  CHECK(r.code == kExitOk);
  const auto trace = lines_of(slurp(out.string() + ".cache_trace.csv"));
  REQUIRE(trace.size() == 13);
  CHECK(trace[0] == "tick,best_score,hit,matched_id");
  CHECK(trace[1] == "0,0,0,");

  CHECK(invoke({"run", "--config", kConfigs + "fig3.toml", "--trace-cache"}).code ==
        kExitValidation);
  CHECK(invoke({"run", "--config", kConfigs + "fig3.toml", "--out", "/no/such/dir/x.csv"})
            .code == kExitOutput);
}

TEST_CASE("sweep experiments") {
  const fs::path dat = scratch_dir() / "fig3.dat";
  auto r = invoke({"sweep", "--experiment", "fig3", "--config", kConfigs + "fig3.toml",
                   "--plot-data", dat.string()});
  CHECK(r.code == kExitOk);
  auto rows = sweep_rows(r.out);
  CHECK(rows.size() == 10);
  for (const auto& row : rows) CHECK(row[1] <= row[2]);
  const auto dat_lines = lines_of(slurp(dat));
  REQUIRE(dat_lines.size() == 11);
  CHECK(dat_lines[0] == "# x cocaco_mean_s traditional_mean_s");
  CHECK(dat_lines[1].find(',') == std::string::npos);

  r = invoke({"sweep", "--experiment", "fig4", "--config", kConfigs + "fig4.toml"});
  CHECK(r.code == kExitOk);
  rows = sweep_rows(r.out);
  CHECK(rows.size() == 7);
  for (const auto& row : rows) CHECK(row[1] <= row[2]);

  r = invoke({"sweep", "--experiment", "fig9", "--config", kConfigs + "fig4.toml"});
  CHECK(r.code == kExitValidation);
}

TEST_CASE("argument errors and help") {
  CHECK(invoke({}).code == kExitValidation);
  CHECK(invoke({"decide"}).code == kExitValidation);
  CHECK(invoke({"frobnicate"}).code == kExitValidation);
  CHECK(invoke({"run", "--config", kConfigs + "fig3.toml", "--bogus"}).code == kExitValidation);
  auto help = invoke({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("sweep") != std::string::npos);
}
