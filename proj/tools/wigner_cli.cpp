// Copyright 2026 The wigner-deform Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "wigner/errors.hpp"
#include "wigner/experiments.hpp"

namespace {

using wigner::ExperimentConfig;
using wigner::ExperimentReport;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

// Flag name -> config key. Every flag is routed through the config parser so
// that file and command line values are validated the same way.
const std::vector<std::pair<std::string, std::string>> kEnsembleFlags{
    {"--n", "n"},
    {"--samples", "samples"},
    {"--theta", "theta"},
    {"--sigma", "sigma"},
    {"--diag-sigma", "diag_sigma"},
    {"--law", "law"},
    {"--symmetry", "symmetry"},
    {"--seed", "seed"},
    {"--t-scale", "t_scale"},
    {"--t-grid", "t_grid"},
    {"--top-k", "top_k"},
    {"--baseline-theta", "baseline_theta"},
    {"--baseline-law", "baseline_law"},
    {"--baseline-seed", "baseline_seed"},
    {"--threads", "threads"},
    {"--length", "oracle_length"},
};

struct CommandOptions {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
};

void add_common(CLI::App* command, CommandOptions& opts, bool ensemble) {
  command->add_option("--config", opts.config_path, "flat key=value config file");
  command->add_option("--out", opts.out_path, "output file (default: stdout)");
  command->add_option("--format", opts.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  if (!ensemble) return;
  for (const auto& [flag, key] : kEnsembleFlags) {
    opts.options[key] = command->add_option(flag, opts.values[key]);
  }
}

ExperimentConfig resolve(const CommandOptions& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = wigner::load_config_file(opts.config_path);
  for (const auto& [key, option] : opts.options) {
    if (option->count() > 0) wigner::apply_config_entry(key, opts.values.at(key), cfg);
  }
  if (!opts.out_path.empty()) wigner::apply_config_entry("out", opts.out_path, cfg);
  if (!opts.format.empty()) wigner::apply_config_entry("format", opts.format, cfg);
  return cfg;
}

int emit(const ExperimentReport& report, const std::string& path, wigner::OutputFormat format) {
  if (path.empty()) {
    wigner::write_report(std::cout, report, format);
  } else {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitUsage;
    }
    wigner::write_report(out, report, format);
  }
  for (const auto& check : report.checks.records) {
    if (!check.pass) {
      std::cerr << (check.informational ? "note: " : "FAIL: ") << check.check;
      if (check.counterexample) std::cerr << " (" << *check.counterexample << ")";
      std::cerr << '\n';
    }
  }
  return report.pass() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed Wigner matrix experiments and exact path-counting checks"};
  app.require_subcommand(1);

  CommandOptions fluct;
  CommandOptions growth;
  CommandOptions census;
  CommandOptions oracle;
  CommandOptions combi;
  add_common(app.add_subcommand("fluctuations", "largest-eigenvalue fluctuations"), fluct, true);
  add_common(app.add_subcommand("trace-growth", "trace against exponential outlier sum"), growth,
             true);
  add_common(app.add_subcommand("census", "semicircle fit, interlacing, outlier census"), census,
             true);
  add_common(app.add_subcommand("oracle-compare", "Monte Carlo trace moments vs exact oracle"),
             oracle, true);
  auto* verify = app.add_subcommand("verify-combinatorics", "exact path-counting checks");
  add_common(verify, combi, false);
  bool inject_fault = false;
  bool quick = false;
  verify->add_flag("--inject-fault", inject_fault, "corrupt one tabulated path count");
  verify->add_flag("--quick", quick, "small enumeration limits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "verify-combinatorics") {
      ExperimentConfig cfg = resolve(combi);
      wigner::CombinatoricsLimits limits;
      if (quick) {
        limits.trajectory_max_length = 10;
        limits.sum_identity_max_length = 16;
        limits.correspondence_max_length = 6;
        limits.correspondence_vertices = 4;
        limits.glue_max_length = 2;
        limits.class_count_max_s = 30;
        limits.tail_m_grid = {25, 100};
        limits.dyck_max_length = 10;
      }
      limits.inject_fault = inject_fault;
      return emit(wigner::run_combinatorics_verify(limits), cfg.output_path, cfg.output_format);
    }
    const CommandOptions& opts = name == "fluctuations"  ? fluct
                                 : name == "trace-growth" ? growth
                                 : name == "census"       ? census
                                                          : oracle;
    const ExperimentConfig cfg = resolve(opts);
    ExperimentReport report;
    if (name == "fluctuations") {
      report = wigner::run_fluctuations(cfg);
    } else if (name == "trace-growth") {
      report = wigner::run_trace_growth(cfg);
    } else if (name == "census") {
      report = wigner::run_spectrum_census(cfg);
    } else {
      report = wigner::run_oracle_compare(cfg, cfg.oracle_length);
    }
    return emit(report, cfg.output_path, cfg.output_format);
  } catch (const wigner::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
