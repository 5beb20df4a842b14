#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "trustrec/cli.hpp"
#include "trustrec/error.hpp"

namespace {

void add_eval_overrides(CLI::App& cmd, trustrec::EvalOverrides& o, std::string& out) {
  cmd.add_option_function<std::uint64_t>("--seed", [&o](std::uint64_t v) { o.seed = v; }, "Fold seed override");
  cmd.add_option_function<std::size_t>("--threads", [&o](std::size_t v) { o.threads = v; },
                                       "Worker threads (0 = all cores)");
  cmd.add_option_function<double>("--tau", [&o](double v) { o.tau = v; }, "Relevance threshold override");
  cmd.add_option("--out", out, "Output directory override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trust-aware collaborative filtering: ingestion, evaluation and beta sweeps"};
  app.require_subcommand(1);

  trustrec::IngestArgs ingest;
  std::string closure;
  auto* ingest_cmd = app.add_subcommand("ingest", "Convert a raw dump to the canonical directory");
  ingest_cmd->add_option("--source", ingest.source, "yelp or librarything")->required();
  ingest_cmd->add_option("--in", ingest.in, "Raw dump directory")->required();
  ingest_cmd->add_option("--out", ingest.out, "Canonical output directory")->required();
  ingest_cmd->add_option("--min-ratings", ingest.min_ratings, "Minimum ratings per kept user")
      ->capture_default_str();
  ingest_cmd->add_option("--category-closure", closure, "File listing the categories to keep");

  std::string spec;
  trustrec::EvalOverrides eval_overrides;
  std::string eval_out;
  auto* eval_cmd = app.add_subcommand("eval", "Cross-validate the configurations of a spec");
  eval_cmd->add_option("--spec", spec, "Experiment spec file")->required();
  add_eval_overrides(*eval_cmd, eval_overrides, eval_out);

  std::string grid = "0:1:0.1";
  trustrec::EvalOverrides sweep_overrides;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate every configuration over a beta grid");
  sweep_cmd->add_option("--spec", spec, "Experiment spec file")->required();
  sweep_cmd->add_option("--beta-grid", grid, "start:stop:step or comma list")->capture_default_str();
  add_eval_overrides(*sweep_cmd, sweep_overrides, sweep_out);

  std::string stats_dir;
  auto* stats_cmd = app.add_subcommand("stats", "Print dataset statistics of a canonical directory");
  stats_cmd->add_option("--in", stats_dir, "Canonical directory")->required();

  trustrec::SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic canonical dataset");
  synth_cmd->add_option("--out", synth.out, "Output directory")->required();
  synth_cmd->add_option("--users", synth.users)->capture_default_str();
  synth_cmd->add_option("--items", synth.items)->capture_default_str();
  synth_cmd->add_option("--ratings", synth.ratings)->capture_default_str();
  synth_cmd->add_option("--mean-friends", synth.mean_friends)->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? trustrec::kExitOk : trustrec::kExitUsage;
  }

  if (*ingest_cmd) {
    if (!closure.empty()) ingest.category_closure = closure;
    return trustrec::cmd_ingest(ingest, std::cout, std::cerr);
  }
  if (*eval_cmd) {
    if (!eval_out.empty()) eval_overrides.out = eval_out;
    return trustrec::cmd_eval(spec, eval_overrides, std::cout, std::cerr);
  }
  if (*sweep_cmd) {
    if (!sweep_out.empty()) sweep_overrides.out = sweep_out;
    std::vector<double> betas;
    try {
      betas = trustrec::parse_beta_grid(grid);
    } catch (const trustrec::UsageError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return trustrec::kExitUsage;
    }
    return trustrec::cmd_sweep(spec, betas, sweep_overrides, std::cout, std::cerr);
  }
  if (*stats_cmd) return trustrec::cmd_stats(stats_dir, std::cout, std::cerr);
  if (*synth_cmd) return trustrec::cmd_synth(synth, std::cout, std::cerr);
  return trustrec::kExitUsage;
}
