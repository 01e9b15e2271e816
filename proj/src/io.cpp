#include <array>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "coco/errors.hpp"
#include "coco/harness.hpp"

namespace coco {

namespace {

using njson = nlohmann::ordered_json;

// Shortest round-trip representation; identical inputs give identical bytes.
std::string format_double(double value) {
  std::array<char, 32> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw Error("bad-config", "key '" + key + "' needs a number, got '" +
                                  value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long parsed = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw Error("bad-config", "key '" + key + "' needs an integer, got '" +
                                  value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "on") return true;
  if (value == "false" || value == "0" || value == "off") return false;
  throw Error("bad-config", "key '" + key + "' needs a boolean, got '" +
                                value + "'");
}

}  // namespace

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::kConstrainedExpert: return "constrained-expert";
    case PolicyKind::kCoverReduction: return "cover-reduction";
    case PolicyKind::kSmoothOgd: return "smooth-ogd";
    case PolicyKind::kPureOgdOcs: return "pure-ogd-ocs";
    case PolicyKind::kStdHedgeBaseline: return "std-hedge-baseline";
  }
  return "unknown";
}

std::string to_string(EnvironmentKind kind) {
  switch (kind) {
    case EnvironmentKind::kSyntheticExpert: return "synthetic-expert";
    case EnvironmentKind::kOcsExpert: return "ocs-expert";
    case EnvironmentKind::kSmoothBall: return "smooth-ball";
    case EnvironmentKind::kLipschitz1d: return "lipschitz-1d";
  }
  return "unknown";
}

PolicyKind policy_from_string(std::string_view name) {
  if (name == "constrained-expert") return PolicyKind::kConstrainedExpert;
  if (name == "cover-reduction") return PolicyKind::kCoverReduction;
  if (name == "smooth-ogd") return PolicyKind::kSmoothOgd;
  if (name == "pure-ogd-ocs") return PolicyKind::kPureOgdOcs;
  if (name == "std-hedge-baseline") return PolicyKind::kStdHedgeBaseline;
  throw Error("bad-config", "unknown policy '" + std::string(name) + "'");
}

EnvironmentKind environment_from_string(std::string_view name) {
  if (name == "synthetic-expert") return EnvironmentKind::kSyntheticExpert;
  if (name == "ocs-expert") return EnvironmentKind::kOcsExpert;
  if (name == "smooth-ball") return EnvironmentKind::kSmoothBall;
  if (name == "lipschitz-1d") return EnvironmentKind::kLipschitz1d;
  throw Error("bad-config", "unknown environment '" + std::string(name) + "'");
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error("bad-config", "expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "policy") {
      config.policy = policy_from_string(value);
    } else if (key == "environment") {
      config.environment = environment_from_string(value);
    } else if (key == "horizon") {
      config.scale.horizon = parse_long(key, value);
    } else if (key == "beta") {
      config.scale.beta = parse_double(key, value);
    } else if (key == "n_experts") {
      config.scale.n_experts = static_cast<int>(parse_long(key, value));
    } else if (key == "dimension") {
      config.scale.dimension = static_cast<int>(parse_long(key, value));
    } else if (key == "diameter") {
      config.scale.diameter = parse_double(key, value);
    } else if (key == "lipschitz") {
      config.scale.lipschitz = parse_double(key, value);
    } else if (key == "smoothness") {
      config.scale.smoothness = parse_double(key, value);
    } else if (key == "budget") {
      config.scale.budget = parse_double(key, value);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "sample_seed") {
      config.sample_seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else if (key == "output") {
      config.output = value;
    } else if (key == "assert_bounds") {
      config.assert_bounds = parse_bool(key, value);
    } else if (key == "hedge_eta") {
      config.hedge_eta = parse_double(key, value);
    } else if (key == "cover_delta") {
      config.cover_delta = parse_double(key, value);
    } else if (key == "budget_constant") {
      config.budget_constant = parse_double(key, value);
    } else {
      throw Error("bad-config", "unknown key '" + key + "'");
    }
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io-error", "cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

namespace {

njson config_json(const RunConfig& config) {
  njson j;
  j["policy"] = to_string(config.policy);
  j["environment"] = to_string(config.environment);
  j["horizon"] = config.scale.horizon;
  j["beta"] = config.scale.beta;
  j["n_experts"] = config.scale.n_experts;
  j["dimension"] = config.scale.dimension;
  j["diameter"] = config.scale.diameter;
  j["lipschitz"] = config.scale.lipschitz;
  j["smoothness"] = config.scale.smoothness;
  j["budget"] = config.scale.budget;
  j["seed"] = config.seed;
  j["sample_seed"] = config.sample_seed;
  j["output"] = config.output;
  j["assert_bounds"] = config.assert_bounds;
  j["hedge_eta"] = config.hedge_eta;
  j["cover_delta"] = config.cover_delta;
  j["budget_constant"] = config.budget_constant;
  return j;
}

}  // namespace

std::string render_csv(const RunRecord& record) {
  const bool with_probs =
      !record.round_probs.empty() && record.round_probs.front().size() <= 32;
  std::string out = "t,cost,violation,Q,eta,G,argmax_expert";
  if (with_probs) {
    for (std::size_t i = 0; i < record.round_probs.front().size(); ++i) {
      out += ",p_" + std::to_string(i);
    }
  }
  out += "\n";
  for (std::size_t r = 0; r < record.rows.size(); ++r) {
    const RoundRow& row = record.rows[r];
    out += std::to_string(row.t);
    out += ',';
    out += format_double(row.cost);
    out += ',';
    out += format_double(row.violation);
    out += ',';
    out += format_double(row.ccv);
    out += ',';
    out += format_double(row.eta);
    out += ',';
    out += format_double(row.scale);
    out += ',';
    out += std::to_string(row.argmax_expert);
    if (with_probs) {
      for (double p : record.round_probs[r]) {
        out += ',';
        out += format_double(p);
      }
    }
    out += "\n";
  }
  return out;
}

std::string render_frequency_csv(const RunRecord& record) {
  std::string out = "expert,freq_expected,freq_sampled\n";
  for (std::size_t i = 0; i < record.freq_expected.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += format_double(record.freq_expected[i]);
    out += ',';
    out += format_double(record.freq_sampled[i]);
    out += "\n";
  }
  return out;
}

std::string render_json(const RunRecord& record) {
  njson j;
  j["config"] = config_json(record.config);
  j["seed"] = record.config.seed;
  njson comparator;
  if (record.comparator.is_expert) {
    comparator["kind"] = "expert";
    comparator["index"] = record.comparator.expert;
  } else {
    comparator["kind"] = "point";
    comparator["point"] = record.comparator.point;
  }
  j["comparator"] = comparator;
  j["regret"] = record.regret;
  j["ccv"] = record.ccv;
  j["cum_cost"] = record.cum_cost;
  j["comparator_cost"] = record.comparator_cost;
  if (record.inner_cost && record.inner_ccv) {
    j["inner"] = njson{{"cost", *record.inner_cost}, {"ccv", *record.inner_ccv}};
  }
  njson checks = njson::array();
  for (const BoundCheck& check : record.checks) {
    checks.push_back(njson{{"name", check.name},
                           {"lhs", check.lhs},
                           {"rhs", check.rhs},
                           {"margin", check.margin},
                           {"pass", check.pass}});
  }
  j["checks"] = checks;
  j["all_pass"] = record.all_pass;
  return j.dump(2) + "\n";
}

RunConfig config_from_json_text(const std::string& json_text) {
  njson j;
  try {
    j = njson::parse(json_text);
  } catch (const std::exception& err) {
    throw Error("bad-config", std::string("cannot parse JSON: ") + err.what());
  }
  const njson& c = j.contains("config") ? j.at("config") : j;
  RunConfig config;
  config.policy = policy_from_string(c.at("policy").get<std::string>());
  config.environment =
      environment_from_string(c.at("environment").get<std::string>());
  config.scale.horizon = c.at("horizon").get<long>();
  config.scale.beta = c.at("beta").get<double>();
  config.scale.n_experts = c.at("n_experts").get<int>();
  config.scale.dimension = c.at("dimension").get<int>();
  config.scale.diameter = c.at("diameter").get<double>();
  config.scale.lipschitz = c.at("lipschitz").get<double>();
  config.scale.smoothness = c.at("smoothness").get<double>();
  config.scale.budget = c.at("budget").get<double>();
  config.seed = c.at("seed").get<std::uint64_t>();
  config.sample_seed = c.at("sample_seed").get<std::uint64_t>();
  config.output = c.at("output").get<std::string>();
  config.assert_bounds = c.at("assert_bounds").get<bool>();
  config.hedge_eta = c.at("hedge_eta").get<double>();
  config.cover_delta = c.at("cover_delta").get<double>();
  config.budget_constant = c.at("budget_constant").get<double>();
  return config;
}

bool check_bounds_record(const std::string& json_text,
                         std::vector<BoundCheck>* parsed) {
  njson j;
  try {
    j = njson::parse(json_text);
  } catch (const std::exception& err) {
    throw Error("bad-config", std::string("cannot parse JSON: ") + err.what());
  }
  if (!j.contains("checks")) {
    throw Error("bad-config", "record has no 'checks' array");
  }
  bool all = true;
  for (const njson& item : j.at("checks")) {
    BoundCheck check;
    check.name = item.at("name").get<std::string>();
    check.lhs = item.at("lhs").get<double>();
    check.rhs = item.at("rhs").get<double>();
    check.margin = item.at("margin").get<double>();
    check.pass = item.at("pass").get<bool>();
    const bool verdict = check.lhs <= check.rhs && check.pass;
    all = all && verdict;
    if (parsed) parsed->push_back(check);
  }
  return all;
}

std::string render_gnuplot(const RunRecord& record, const std::string& stem) {
  const std::string base = std::filesystem::path(stem).filename().string();
  std::string out;
  out += "# Generated plot script; expects " + base + ".csv in the same directory.\n";
  out += "set datafile separator comma\n";
  out += "set key autotitle columnhead\n";
  out += "set terminal pngcairo size 1200,420\n";
  out += "set output '" + base + "_ccv.png'\n";
  out += "set xlabel 't'\n";
  out += "set ylabel 'cumulative violation'\n";
  out += "plot '" + base + ".csv' using 1:4 with lines lw 2 title 'Q(t)'\n";
  out += "set output '" + base + "_cost.png'\n";
  out += "set ylabel 'per-round cost'\n";
  out += "plot '" + base + ".csv' using 1:2 smooth bezier lw 2 title 'cost'\n";
  if (!record.freq_expected.empty()) {
    out += "set output '" + base + "_freq.png'\n";
    out += "set style fill solid 0.6\n";
    out += "set boxwidth 0.4\n";
    out += "set xlabel 'expert'\n";
    out += "set ylabel 'selection frequency'\n";
    out += "plot '" + base + "_freq.csv' using 1:2 with boxes title 'expected', \\\n";
    out += "     '" + base + "_freq.csv' using ($1+0.4):3 with boxes title 'sampled'\n";
  }
  return out;
}

std::string render_sweep_gnuplot(const std::string& stem) {
  const std::string base = std::filesystem::path(stem).filename().string();
  std::string out;
  out += "# Generated plot script; expects " + base + ".csv in the same directory.\n";
  out += "set datafile separator comma\n";
  out += "set key autotitle columnhead\n";
  out += "set terminal pngcairo size 900,420\n";
  out += "set output '" + base + ".png'\n";
  out += "set xlabel 'beta'\n";
  out += "set y2tics\n";
  out += "set ylabel 'regret'\n";
  out += "set y2label 'cumulative violation'\n";
  out += "plot '" + base + ".csv' using 1:2 with linespoints lw 2 title 'regret', \\\n";
  out += "     '" + base + ".csv' using 1:3 axes x1y2 with linespoints lw 2 title 'ccv'\n";
  return out;
}

std::string render_sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "beta,regret,ccv\n";
  for (const SweepRow& row : rows) {
    out += format_double(row.beta);
    out += ',';
    out += format_double(row.regret);
    out += ',';
    out += format_double(row.ccv);
    out += "\n";
  }
  return out;
}

namespace {

std::string resolve_output(const std::string& path) {
  const char* dir = std::getenv("COCO_OUTPUT_DIR");
  if (!dir || !*dir) return path;
  return (std::filesystem::path(dir) /
          std::filesystem::path(path).filename())
      .string();
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) {
    std::filesystem::create_directories(target.parent_path(), ec);
    if (ec) {
      throw Error("io-error", "cannot create directory " +
                                  target.parent_path().string() + ": " +
                                  ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io-error", "cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("io-error", "write failed for " + path);
}

}  // namespace

void emit(const RunRecord& record, std::string_view format,
          const std::string& path) {
  const std::string resolved = resolve_output(path);
  if (format == "csv") {
    write_file(resolved, render_csv(record));
  } else if (format == "json") {
    write_file(resolved, render_json(record));
  } else {
    throw Error("bad-config", "unknown emit format '" + std::string(format) +
                                  "' (expected csv or json)");
  }
}

std::string emit_run_files(const RunRecord& record, const std::string& stem) {
  const std::string resolved = resolve_output(stem);
  write_file(resolved + ".csv", render_csv(record));
  write_file(resolved + ".json", render_json(record));
  write_file(resolved + ".gp", render_gnuplot(record, resolved));
  if (!record.freq_expected.empty()) {
    write_file(resolved + "_freq.csv", render_frequency_csv(record));
  }
  return resolved;
}

}  // namespace coco
