// Command-line harness: run experiments, sweep the trade-off knob, inspect
// covers, and re-verify the bound verdicts stored in a summary JSON.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coco/errors.hpp"
#include "coco/geometry.hpp"
#include "coco/harness.hpp"

namespace {

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> values;
  std::stringstream stream(csv);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

// Set descriptors: simplex:N | box:lo,hi[:lo,hi...] | ball:d:radius
coco::DecisionSet parse_set(const std::string& descriptor) {
  std::vector<std::string> parts;
  std::stringstream stream(descriptor);
  std::string item;
  while (std::getline(stream, item, ':')) parts.push_back(item);
  if (parts.empty()) throw coco::Error("bad-config", "empty set descriptor");
  if (parts[0] == "simplex" && parts.size() == 2) {
    return coco::DecisionSet::simplex(std::stoi(parts[1]));
  }
  if (parts[0] == "box" && parts.size() >= 2) {
    coco::Point lo;
    coco::Point hi;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto values = parse_list(parts[i]);
      if (values.size() != 2) {
        throw coco::Error("bad-config",
                          "box axis needs 'lo,hi', got '" + parts[i] + "'");
      }
      lo.push_back(values[0]);
      hi.push_back(values[1]);
    }
    return coco::DecisionSet::box(std::move(lo), std::move(hi));
  }
  if (parts[0] == "ball" && parts.size() == 3) {
    const int d = std::stoi(parts[1]);
    return coco::DecisionSet::ball(coco::Point(d, 0.0), std::stod(parts[2]));
  }
  throw coco::Error("bad-config",
                    "cannot parse set descriptor '" + descriptor +
                        "' (expected simplex:N, box:lo,hi[:lo,hi...], or "
                        "ball:d:radius)");
}

void print_checks(const coco::RunRecord& record) {
  for (const coco::BoundCheck& check : record.checks) {
    std::printf("  [%s] %-24s lhs=%.6g rhs=%.6g margin=%.3g\n",
                check.pass ? "pass" : "FAIL", check.name.c_str(), check.lhs,
                check.rhs, check.margin);
  }
}

int cmd_run(const std::string& config_path, const std::string& output,
            bool no_assert) {
  coco::RunConfig config = coco::load_config(config_path);
  if (!output.empty()) config.output = output;
  if (no_assert) config.assert_bounds = false;
  const coco::RunRecord record = coco::run(config);
  std::printf("policy=%s env=%s T=%ld beta=%g seed=%llu\n",
              coco::to_string(config.policy).c_str(),
              coco::to_string(config.environment).c_str(),
              config.scale.horizon, config.scale.beta,
              static_cast<unsigned long long>(config.seed));
  if (record.comparator.is_expert) {
    std::printf("comparator=expert %d\n", record.comparator.expert);
  }
  std::printf("regret=%.6f ccv=%.6f wall=%.3fs\n", record.regret, record.ccv,
              record.wall_time_s);
  print_checks(record);
  if (!config.output.empty()) {
    const std::string stem = coco::emit_run_files(record, config.output);
    std::printf("wrote %s.csv %s.json %s.gp\n", stem.c_str(), stem.c_str(),
                stem.c_str());
  }
  return record.all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& betas_csv,
              const std::string& output) {
  const coco::RunConfig base = coco::load_config(config_path);
  const std::vector<double> betas = parse_list(betas_csv);
  const std::vector<coco::SweepRow> rows = coco::sweep(base, betas);
  std::printf("beta,regret,ccv\n");
  for (const coco::SweepRow& row : rows) {
    std::printf("%g,%.6f,%.6f\n", row.beta, row.regret, row.ccv);
  }
  if (!output.empty()) {
    for (const auto& [suffix, content] :
         {std::pair<const char*, std::string>{".csv",
                                              coco::render_sweep_csv(rows)},
          {".gp", coco::render_sweep_gnuplot(output)}}) {
      std::ofstream out(output + suffix);
      if (!out) throw coco::Error("io-error", "cannot open " + output + suffix);
      out << content;
    }
    std::printf("wrote %s.csv %s.gp\n", output.c_str(), output.c_str());
  }
  return 0;
}

int cmd_cover(const std::string& descriptor, double delta,
              const std::string& output) {
  const coco::DecisionSet set = parse_set(descriptor);
  const coco::Cover cover = coco::build_cover(set, delta);
  std::ostringstream csv;
  csv << "center";
  for (int i = 0; i < set.dimension(); ++i) csv << ",x_" << i;
  csv << "\n";
  for (std::size_t c = 0; c < cover.centers.size(); ++c) {
    csv << c;
    for (double x : cover.centers[c]) csv << ',' << x;
    csv << "\n";
  }
  if (output.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(output);
    if (!out) throw coco::Error("io-error", "cannot open " + output);
    out << csv.str();
  }
  std::fprintf(stderr, "%zu centers, delta=%g, size bound %g\n",
               cover.centers.size(), delta,
               coco::cover_size_bound(set.diameter(), delta, set.dimension()));
  return 0;
}

int cmd_check_bounds(const std::string& record_path) {
  std::ifstream in(record_path);
  if (!in) throw coco::Error("io-error", "cannot open " + record_path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::vector<coco::BoundCheck> checks;
  const bool ok = coco::check_bounds_record(buffer.str(), &checks);
  for (const coco::BoundCheck& check : checks) {
    std::printf("  [%s] %-24s lhs=%.6g rhs=%.6g\n",
                check.pass && check.lhs <= check.rhs ? "pass" : "FAIL",
                check.name.c_str(), check.lhs, check.rhs);
  }
  std::printf("%s\n", ok ? "all bounds verified" : "bound verification FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online convex optimization with adversarial constraints"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  bool no_assert = false;
  auto* run_cmd = app.add_subcommand("run", "Execute one configured run");
  run_cmd->add_option("--config", config_path, "flat key=value config file")
      ->required();
  run_cmd->add_option("--output", output, "output path stem (overrides config)");
  run_cmd->add_flag("--no-assert", no_assert, "disable bound assertions");

  std::string betas;
  std::string sweep_output;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Run one config across several beta values");
  sweep_cmd->add_option("--config", config_path, "flat key=value config file")
      ->required();
  sweep_cmd->add_option("--betas", betas, "comma-separated beta list")
      ->required();
  sweep_cmd->add_option("--output", sweep_output, "sweep CSV path");

  std::string set_descriptor;
  double delta = 0.1;
  std::string cover_output;
  auto* cover_cmd = app.add_subcommand("cover", "Build and print a delta-cover");
  cover_cmd
      ->add_option("--set", set_descriptor,
                   "simplex:N | box:lo,hi[:lo,hi...] | ball:d:radius")
      ->required();
  cover_cmd->add_option("--delta", delta, "cover radius")->required();
  cover_cmd->add_option("--output", cover_output, "center CSV path");

  std::string record_path;
  auto* check_cmd = app.add_subcommand(
      "check-bounds", "Re-verify the verdicts stored in a summary JSON");
  check_cmd->add_option("--record", record_path, "summary JSON path")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, output, no_assert);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, betas, sweep_output);
    if (cover_cmd->parsed()) return cmd_cover(set_descriptor, delta, cover_output);
    if (check_cmd->parsed()) return cmd_check_bounds(record_path);
  } catch (const coco::Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 2;
  }
  return 0;
}
