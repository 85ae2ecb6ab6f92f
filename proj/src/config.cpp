#include "cocaco/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cocaco/errors.hpp"

namespace cocaco {

namespace {

// ---------------------------------------------------------------------------
// TOML subset: [section] headers, key = value, # comments. Values are
// strings, booleans, numbers and (possibly nested, possibly multi-line)
// arrays.

struct Value {
  enum class Type { String, Number, Bool, Array };
  Type type = Type::String;
  std::string text;  // string contents or the raw number token
  bool boolean = false;
  std::vector<Value> items;
  int line = 0;
};

using Section = std::map<std::string, Value>;
using Document = std::map<std::string, Section>;

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Document parse() {
    Document doc;
    Section* current = nullptr;
    std::string current_name;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        current_name = read_name("section name");
        expect(']');
        finish_line();
        if (doc.count(current_name)) fail("duplicate section [" + current_name + "]");
        current = &doc[current_name];
        continue;
      }
      if (current == nullptr) fail("key outside of any [section]");
      const std::string key = read_name("key");
      skip_spaces();
      expect('=');
      skip_spaces();
      Value value = read_value();
      finish_line();
      if (current->count(key)) fail("duplicate key " + current_name + "." + key);
      (*current)[key] = std::move(value);
    }
    return doc;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError("", "line " + std::to_string(line_) + ": " + message);
  }

  void skip_spaces() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }

  void skip_comment() {
    if (!eof() && peek() == '#') {
      while (!eof() && peek() != '\n') ++pos_;
    }
  }

  void skip_blank_lines() {
    while (true) {
      skip_spaces();
      skip_comment();
      if (eof() || peek() != '\n') return;
      ++pos_;
      ++line_;
    }
  }

  // Whitespace, newlines and comments inside arrays.
  void skip_array_space() { skip_blank_lines(); }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void finish_line() {
    skip_spaces();
    skip_comment();
    if (eof()) return;
    if (peek() != '\n') fail("unexpected trailing characters");
    ++pos_;
    ++line_;
  }

  std::string read_name(const char* what) {
    skip_spaces();
    const std::size_t start = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    if (pos_ == start) fail(std::string("expected ") + what);
    std::string name(text_.substr(start, pos_ - start));
    skip_spaces();
    return name;
  }

  Value read_value() {
    if (eof()) fail("missing value");
    Value v;
    v.line = line_;
    const char c = peek();
    if (c == '"') {
      v.type = Value::Type::String;
      v.text = read_string();
    } else if (c == '[') {
      v.type = Value::Type::Array;
      ++pos_;
      skip_array_space();
      while (!eof() && peek() != ']') {
        v.items.push_back(read_value());
        skip_array_space();
        if (!eof() && peek() == ',') {
          ++pos_;
          skip_array_space();
        } else {
          break;
        }
      }
      expect(']');
    } else {
      const std::size_t start = pos_;
      while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                        peek() == '+' || peek() == '-' || peek() == '_')) {
        ++pos_;
      }
      const std::string token(text_.substr(start, pos_ - start));
      if (token.empty()) fail("unrecognized value");
      if (token == "true" || token == "false") {
        v.type = Value::Type::Bool;
        v.boolean = token == "true";
      } else {
        v.type = Value::Type::Number;
        v.text = token;
      }
    }
    return v;
  }

  std::string read_string() {
    ++pos_;  // opening quote
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = text_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (eof()) fail("unterminated string");
        const char e = text_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unknown escape \\") + e);
        }
        continue;
      }
      out += c;
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

// ---------------------------------------------------------------------------
// Typed access with field-level errors.

class SectionReader {
 public:
  SectionReader(std::string name, const Section* section)
      : name_(std::move(name)), section_(section) {}

  bool present() const { return section_ != nullptr; }
  bool has(const std::string& key) const { return section_ && section_->count(key); }

  std::string field(const std::string& key) const { return name_ + "." + key; }

  const Value& get(const std::string& key) const {
    if (!has(key)) throw ConfigError(field(key), "missing field");
    return section_->at(key);
  }

  double number(const std::string& key) const { return to_double(get(key), field(key)); }

  std::uint64_t integer(const std::string& key) const { return to_uint(get(key), field(key)); }

  bool boolean(const std::string& key) const {
    const Value& v = get(key);
    if (v.type != Value::Type::Bool) throw ConfigError(field(key), "expected true or false");
    return v.boolean;
  }

  std::string string(const std::string& key) const {
    const Value& v = get(key);
    if (v.type != Value::Type::String) throw ConfigError(field(key), "expected a quoted string");
    return v.text;
  }

  std::vector<double> numbers(const Value& v, const std::string& where) const {
    if (v.type != Value::Type::Array) throw ConfigError(where, "expected an array of numbers");
    std::vector<double> out;
    for (const Value& item : v.items) out.push_back(to_double(item, where));
    return out;
  }

  void reject_unknown(const std::set<std::string>& allowed) const {
    if (!section_) return;
    for (const auto& [key, value] : *section_) {
      if (!allowed.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

  static double to_double(const Value& v, const std::string& where) {
    if (v.type != Value::Type::Number) throw ConfigError(where, "expected a number");
    double out = 0.0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
      throw ConfigError(where, "invalid number '" + v.text + "'");
    }
    return out;
  }

  static std::uint64_t to_uint(const Value& v, const std::string& where) {
    if (v.type != Value::Type::Number) throw ConfigError(where, "expected an integer");
    std::uint64_t out = 0;
    const char* first = v.text.data();
    const char* last = first + v.text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
      throw ConfigError(where, "expected a non-negative integer, got '" + v.text + "'");
    }
    return out;
  }

 private:
  std::string name_;
  const Section* section_;
};

const std::set<std::string> kSections = {"scenario", "channel", "link",  "edge", "cloud",
                                         "workload", "output",  "task",  "cache"};

template <typename Enum, typename ParseFn>
Enum read_enum(const SectionReader& s, const std::string& key, ParseFn parse,
               const char* choices) {
  const std::string name = s.string(key);
  const auto parsed = parse(name);
  if (!parsed) throw ConfigError(s.field(key), "'" + name + "' is not one of " + choices);
  return *parsed;
}

FeatureVector read_vector(const SectionReader& s, const Value& v, const std::string& where) {
  std::vector<double> values = s.numbers(v, where);
  if (values.empty()) throw ConfigError(where, "feature vector must not be empty");
  return FeatureVector(std::move(values));
}

void check(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

}  // namespace

ConfigFile parse_config(std::string_view text) {
  const Document doc = Parser(text).parse();
  for (const auto& [name, section] : doc) {
    if (!kSections.count(name)) throw ConfigError(name, "unknown section");
  }
  auto section = [&](const std::string& name) {
    auto it = doc.find(name);
    return SectionReader(name, it == doc.end() ? nullptr : &it->second);
  };

  ConfigFile config;
  Scenario& sc = config.scenario;
  const SectionReader task = section("task");
  const bool decide_only = task.present();

  const SectionReader scenario = section("scenario");
  scenario.reject_unknown(
      {"mode", "engine", "n_users", "tasks_per_user", "cache_capacity", "metric", "seed"});
  if (!decide_only || scenario.has("mode")) {
    sc.mode = read_enum<Mode>(scenario, "mode", parse_mode, "cocaco, traditional");
  }
  if (!decide_only || scenario.has("engine")) {
    sc.engine = read_enum<Engine>(scenario, "engine", parse_engine, "analytic, event");
  }
  if (!decide_only || scenario.has("n_users")) sc.n_users = scenario.integer("n_users");
  if (!decide_only || scenario.has("tasks_per_user")) {
    sc.tasks_per_user = scenario.integer("tasks_per_user");
  }
  if (!decide_only || scenario.has("seed")) sc.seed = scenario.integer("seed");
  sc.cache_capacity = scenario.integer("cache_capacity");
  sc.metric = read_enum<SimilarityMetric>(scenario, "metric", parse_similarity_metric,
                                          "normalized_euclidean, cosine");

  const SectionReader channel = section("channel");
  channel.reject_unknown({"bandwidth_hz", "tx_power_w", "channel_gain", "noise_power_w"});
  sc.channel.bandwidth_hz = channel.number("bandwidth_hz");
  sc.channel.tx_power_w = channel.number("tx_power_w");
  sc.channel.channel_gain = channel.number("channel_gain");
  sc.channel.noise_power_w = channel.number("noise_power_w");

  const SectionReader link = section("link");
  link.reject_unknown({"downlink_bps", "backhaul_latency_s"});
  sc.link.downlink_bps = link.number("downlink_bps");
  sc.link.backhaul_latency_s = link.number("backhaul_latency_s");

  const SectionReader edge = section("edge");
  edge.reject_unknown({"processing_rate_cps"});
  sc.edge.processing_rate_cps = edge.number("processing_rate_cps");

  const SectionReader cloud = section("cloud");
  cloud.reject_unknown({"processing_rate_cps"});
  sc.cloud.processing_rate_cps = cloud.number("processing_rate_cps");

  const SectionReader workload = section("workload");
  workload.reject_unknown({"kind", "image_width", "image_widths", "bits_per_pixel",
                           "cycles_per_pixel", "result_bits", "feature_dim",
                           "repeat_probability"});
  if (!decide_only || workload.present()) {
    WorkloadSpec& w = sc.workload;
    w.kind = read_enum<WorkloadKind>(workload, "kind", parse_workload_kind,
                                     "image_sweep, fixed_image");
    if (w.kind == WorkloadKind::FixedImage || workload.has("image_width")) {
      w.image_width = workload.integer("image_width");
    }
    if (w.kind == WorkloadKind::ImageSweep || workload.has("image_widths")) {
      const Value& list = workload.get("image_widths");
      check(list.type == Value::Type::Array, workload.field("image_widths"),
            "expected an array of integers");
      w.image_widths.clear();
      for (const Value& item : list.items) {
        w.image_widths.push_back(SectionReader::to_uint(item, workload.field("image_widths")));
      }
    }
    w.bits_per_pixel = workload.number("bits_per_pixel");
    w.cycles_per_pixel = workload.number("cycles_per_pixel");
    w.result_bits = workload.number("result_bits");
    w.feature_dim = workload.integer("feature_dim");
    w.repeat_probability = workload.number("repeat_probability");
  }

  const SectionReader output = section("output");
  output.reject_unknown({"path", "trace_cache", "csv_precision"});
  if (output.has("path")) config.output.path = output.string("path");
  if (output.has("trace_cache")) config.output.trace_cache = output.boolean("trace_cache");
  if (output.has("csv_precision")) {
    const std::uint64_t precision = output.integer("csv_precision");
    check(precision >= 1 && precision <= 17, output.field("csv_precision"),
          "must lie in [1, 17]");
    config.output.csv_precision = static_cast<int>(precision);
  }

  const SectionReader cache = section("cache");
  cache.reject_unknown({"entries"});
  check(!cache.present() || decide_only, "cache", "preloaded entries require a [task] section");

  try {
    validate(sc);
  } catch (const ParameterError& e) {
    // Messages start with the offending "section.key".
    const std::string message = e.what();
    const std::size_t space = message.find(' ');
    throw ConfigError(message.substr(0, space), message.substr(space + 1));
  }

  if (decide_only) {
    task.reject_unknown({"upload_bits", "compute_cycles", "result_bits", "features"});
    const FeatureVector features = read_vector(task, task.get("features"), task.field("features"));
    DecideInput input{TaskSpec{task.number("upload_bits"), task.number("compute_cycles"),
                               task.number("result_bits"), features},
                      {}};
    check(input.task.upload_bits >= 0.0, task.field("upload_bits"), "must be >= 0");
    check(input.task.compute_cycles >= 0.0, task.field("compute_cycles"), "must be >= 0");
    check(input.task.result_bits >= 0.0, task.field("result_bits"), "must be >= 0");
    if (cache.has("entries")) {
      const Value& entries = cache.get("entries");
      check(entries.type == Value::Type::Array, cache.field("entries"),
            "expected an array of feature vectors");
      for (std::size_t i = 0; i < entries.items.size(); ++i) {
        const std::string where = cache.field("entries") + "[" + std::to_string(i) + "]";
        FeatureVector v = read_vector(cache, entries.items[i], where);
        check(v.dimension() == features.dimension(), where,
              "dimension " + std::to_string(v.dimension()) + " does not match task.features (" +
                  std::to_string(features.dimension()) + ")");
        input.cached.push_back(std::move(v));
      }
    }
    config.decide = std::move(input);
  }
  return config;
}

ConfigFile load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigIoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

std::string vector_literal(const FeatureVector& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.dimension(); ++i) {
    if (i) out += ", ";
    out += fmt_double(v[i]);
  }
  return out + "]";
}

}  // namespace

std::string serialize_config(const ConfigFile& config) {
  const Scenario& sc = config.scenario;
  std::ostringstream out;
  out << "[scenario]\n"
      << "mode = " << quote(std::string(to_string(sc.mode))) << "\n"
      << "engine = " << quote(std::string(to_string(sc.engine))) << "\n"
      << "n_users = " << sc.n_users << "\n"
      << "tasks_per_user = " << sc.tasks_per_user << "\n"
      << "cache_capacity = " << sc.cache_capacity << "\n"
      << "metric = " << quote(std::string(to_string(sc.metric))) << "\n"
      << "seed = " << sc.seed << "\n\n";
  out << "[channel]\n"
      << "bandwidth_hz = " << fmt_double(sc.channel.bandwidth_hz) << "\n"
      << "tx_power_w = " << fmt_double(sc.channel.tx_power_w) << "\n"
      << "channel_gain = " << fmt_double(sc.channel.channel_gain) << "\n"
      << "noise_power_w = " << fmt_double(sc.channel.noise_power_w) << "\n\n";
  out << "[link]\n"
      << "downlink_bps = " << fmt_double(sc.link.downlink_bps) << "\n"
      << "backhaul_latency_s = " << fmt_double(sc.link.backhaul_latency_s) << "\n\n";
  out << "[edge]\nprocessing_rate_cps = " << fmt_double(sc.edge.processing_rate_cps) << "\n\n";
  out << "[cloud]\nprocessing_rate_cps = " << fmt_double(sc.cloud.processing_rate_cps) << "\n\n";

  const WorkloadSpec& w = sc.workload;
  out << "[workload]\n"
      << "kind = " << quote(std::string(to_string(w.kind))) << "\n"
      << "image_width = " << w.image_width << "\n"
      << "image_widths = [";
  for (std::size_t i = 0; i < w.image_widths.size(); ++i) {
    out << (i ? ", " : "") << w.image_widths[i];
  }
  out << "]\n"
      << "bits_per_pixel = " << fmt_double(w.bits_per_pixel) << "\n"
      << "cycles_per_pixel = " << fmt_double(w.cycles_per_pixel) << "\n"
      << "result_bits = " << fmt_double(w.result_bits) << "\n"
      << "feature_dim = " << w.feature_dim << "\n"
      << "repeat_probability = " << fmt_double(w.repeat_probability) << "\n\n";

  out << "[output]\n"
      << "path = " << quote(config.output.path) << "\n"
      << "trace_cache = " << (config.output.trace_cache ? "true" : "false") << "\n"
      << "csv_precision = " << config.output.csv_precision << "\n";

  if (config.decide) {
    const TaskSpec& t = config.decide->task;
    out << "\n[task]\n"
        << "upload_bits = " << fmt_double(t.upload_bits) << "\n"
        << "compute_cycles = " << fmt_double(t.compute_cycles) << "\n"
        << "result_bits = " << fmt_double(t.result_bits) << "\n"
        << "features = " << vector_literal(t.features) << "\n";
    out << "\n[cache]\nentries = [";
    for (std::size_t i = 0; i < config.decide->cached.size(); ++i) {
      out << (i ? ",\n  " : "\n  ") << vector_literal(config.decide->cached[i]);
    }
    out << (config.decide->cached.empty() ? "]\n" : ",\n]\n");
  }
  return out.str();
}

std::filesystem::path resolve_config_path(std::string_view arg) {
  std::filesystem::path path(arg);
  if (path.is_absolute() || std::filesystem::exists(path)) return path;
  if (const char* dir = std::getenv(kConfigDirEnv); dir != nullptr && *dir != '\0') {
    std::filesystem::path candidate = std::filesystem::path(dir) / path;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return path;
}

}  // namespace cocaco
