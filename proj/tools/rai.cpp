// Copyright 2026 The Authors.
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

// rai: command-line front end for alpha-investing feature selection.
//
// Exit codes:
//   0  success (including an empty model)
//   2  usage or input parse failure, unknown scenario/method
//   3  degenerate data (constant response, no usable feature)
//   4  any other runtime failure (e.g. enumeration budget exceeded)

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rai/rai.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitRuntime = 4;

int exit_code_for(const rai::Error& e) {
  switch (e.code()) {
    case rai::ErrorCode::kParseError:
    case rai::ErrorCode::kInvalidInput:
    case rai::ErrorCode::kLengthMismatch:
      return kExitParse;
    case rai::ErrorCode::kConstantResponse:
    case rai::ErrorCode::kAllColumnsConstant:
      return kExitDegenerate;
    default:
      return kExitRuntime;
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rai::Error(rai::ErrorCode::kInvalidInput, "cannot open '" + path + "' for writing");
  out << content;
}

struct RaiFlags {
  double wealth = rai::kDefaultInitialWealth;
  double payout = rai::kDefaultPayout;
  int max_passes = 0;
  unsigned max_order = 0;
  std::uint64_t seed = 0;
  bool interactions = false;
  bool no_skip = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--wealth", wealth, "Initial alpha-wealth")->capture_default_str();
    cmd->add_option("--payout", payout, "Wealth earned per rejection")->capture_default_str();
    cmd->add_option("--max-passes", max_passes, "Maximum testing passes (default ceil(log2 n) + 2)");
    cmd->add_option("--max-order", max_order, "Cap on interaction order (default unbounded)");
    cmd->add_option("--seed", seed, "Seed echoed in reports and used by simulations")->capture_default_str();
    cmd->add_flag("--no-skip", no_skip, "Test every pass instead of skipping provably empty ones");
  }

  rai::RaiConfig config() const {
    rai::RaiConfig c;
    c.initial_wealth = wealth;
    c.payout = payout;
    if (max_passes > 0) c.max_passes = max_passes;
    if (max_order > 0) c.max_interaction_order = max_order;
    c.seed = seed;
    c.interactions = interactions;
    c.skip_passes = !no_skip;
    return c;
  }
};

rai::Dataset load_dataset(const std::string& input, const std::string& response) {
  const rai::Table table = rai::read_delimited_file(input);
  for (const std::string& s : table.skipped) std::cerr << "warning: skipping non-numeric column '" << s << "'\n";
  rai::RegressionInput in = rai::split_response(table, response);
  rai::Dataset data = rai::standardize(in.features, in.response, in.names, in.response_name);
  for (const std::string& d : data.dropped) std::cerr << "warning: dropping constant column '" << d << "'\n";
  return data;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Revisiting alpha-investing feature selection"};
  app.require_subcommand(1);

  // select
  auto* select = app.add_subcommand("select", "Select features from a delimited data file");
  std::string sel_input, sel_response, sel_output, sel_json, sel_trace;
  bool sel_timing = false;
  RaiFlags sel_flags;
  select->add_option("--input", sel_input, "Delimited text file with a header row")->required();
  select->add_option("--response", sel_response, "Name of the response column")->required();
  select->add_flag("--interactions", sel_flags.interactions, "Search products of selected terms");
  sel_flags.attach(select);
  select->add_option("--output", sel_output, "Write the text report here instead of stdout");
  select->add_option("--json", sel_json, "Machine-readable report (default <output>.json when --output is set)");
  select->add_option("--trace", sel_trace, "Dump the full per-test trace as JSON");
  select->add_flag("--timing", sel_timing, "Include wall time in the report");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a simulation experiment");
  std::string sim_scenario = "single_interaction", sim_method = "rai_interactions", sim_out = "results.jsonl";
  std::string sim_summary;
  rai::SimSpec spec;
  unsigned sim_threads = 0;
  bool sim_timing = false;
  RaiFlags sim_flags;
  simulate->add_option("--scenario", sim_scenario, "paper_interactions | single_interaction | global_null")
      ->capture_default_str();
  simulate->add_option("--method", sim_method, "rai | rai_interactions | stepwise_aic | mean_model | true_model")
      ->capture_default_str();
  simulate->add_option("--n", spec.n, "Observations")->capture_default_str();
  simulate->add_option("--p", spec.p, "Features")->capture_default_str();
  simulate->add_option("--reps", spec.replications, "Replications")->capture_default_str();
  simulate->add_option("--target-r2", spec.target_r2, "True-model R^2")->capture_default_str();
  simulate->add_option("--out", sim_out, "Line-delimited results file")->capture_default_str();
  simulate->add_option("--summary", sim_summary, "Summary table (default <out>.summary.tsv)");
  simulate->add_option("--threads", sim_threads, "Worker threads (default: hardware concurrency)");
  simulate->add_flag("--timing", sim_timing, "Record per-replication wall time");
  sim_flags.attach(simulate);

  // diagnose
  auto* diag = app.add_subcommand("diagnose", "Compare a selection run with exact references");
  std::string diag_input, diag_response;
  std::size_t diag_k = 2;
  RaiFlags diag_flags;
  diag->add_option("--input", diag_input, "Delimited text file with a header row")->required();
  diag->add_option("--response", diag_response, "Name of the response column")->required();
  diag->add_option("--k", diag_k, "Reference model size")->capture_default_str();
  diag_flags.attach(diag);

  // evaluate
  auto* eval = app.add_subcommand("evaluate", "Out-of-sample comparison on repeated train/test splits");
  std::string eval_input, eval_response;
  std::size_t eval_splits = 20;
  bool eval_marginal = false;
  RaiFlags eval_flags;
  eval->add_option("--input", eval_input, "Delimited text file with a header row")->required();
  eval->add_option("--response", eval_response, "Name of the response column")->required();
  eval->add_option("--splits", eval_splits, "Number of random 5/6 - 1/6 splits")->capture_default_str();
  eval->add_flag("--marginal-only", eval_marginal, "Disable the interaction search");
  eval_flags.attach(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*select) {
      const auto started = std::chrono::steady_clock::now();
      const rai::Dataset data = load_dataset(sel_input, sel_response);
      const rai::RaiConfig cfg = sel_flags.config();
      const rai::RaiResult result = rai::run_rai(data, cfg);
      std::optional<double> elapsed;
      if (sel_timing) {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - started;
        elapsed = dt.count();
      }
      const rai::RunReport report = rai::make_report(data, cfg, result, elapsed);
      const std::string text = rai::to_text(report);
      if (sel_output.empty()) {
        std::cout << text;
      } else {
        write_file(sel_output, text);
        if (sel_json.empty()) sel_json = sel_output + ".json";
      }
      if (!sel_json.empty()) write_file(sel_json, rai::to_json(report).dump(2) + "\n");
      if (!sel_trace.empty()) write_file(sel_trace, rai::trace_json(result, data).dump(2) + "\n");
      return 0;
    }

    if (*simulate) {
      spec.scenario = rai::parse_scenario(sim_scenario);
      const rai::Method method = rai::parse_method(sim_method);
      spec.seed = sim_flags.seed;
      rai::ReplicationOptions opts;
      opts.config = sim_flags.config();
      opts.timing = sim_timing;
      const rai::ExperimentResults results = rai::run_experiment(spec, method, opts, sim_threads);
      rai::write_results(results, sim_out);
      const std::string table = rai::summary_table(results);
      write_file(sim_summary.empty() ? sim_out + ".summary.tsv" : sim_summary, table);
      std::cout << table;
      if (results.failures() > 0) {
        std::cerr << "warning: " << results.failures() << " replication(s) failed; see " << sim_out << "\n";
      }
      return 0;
    }

    if (*diag) {
      const rai::Dataset data = load_dataset(diag_input, diag_response);
      const rai::Diagnostics d = rai::diagnose(data, diag_k, diag_flags.config());
      std::cout << rai::to_text(d, data);
      return 0;
    }

    if (*eval) {
      const rai::Table table = rai::read_delimited_file(eval_input);
      const rai::RegressionInput in = rai::split_response(table, eval_response);
      rai::RaiConfig cfg = eval_flags.config();
      cfg.interactions = !eval_marginal;
      const auto scores =
          rai::evaluate_splits(in.features, in.response, in.names, cfg, eval_splits, eval_flags.seed);
      std::printf("split\tpmse_rai\tpmse_stepwise_aic\tsize_rai\tsize_stepwise\n");
      double sum_rai = 0.0, sum_step = 0.0;
      std::size_t wins = 0;
      for (const auto& s : scores) {
        std::printf("%zu\t%.6g\t%.6g\t%zu\t%zu\n", s.split, s.pmse_rai, s.pmse_stepwise, s.rai_size,
                    s.stepwise_size);
        sum_rai += s.pmse_rai;
        sum_step += s.pmse_stepwise;
        wins += s.pmse_rai < s.pmse_stepwise ? 1 : 0;
      }
      const double k = static_cast<double>(scores.size());
      std::printf("mean\t%.6g\t%.6g\n", sum_rai / k, sum_step / k);
      std::printf("rai_wins\t%zu/%zu\n", wins, scores.size());
      return 0;
    }
  } catch (const rai::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == rai::ErrorCode::kBudgetExceeded) {
      std::cerr << "hint: lower --k, use fewer features, or raise RAI_ENUM_BUDGET\n";
    }
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
