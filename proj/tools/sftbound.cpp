// Command-line front end: one subcommand per analysis, JSON summary on stdout.
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sftbound/cli.hpp"

int main(int argc, char** argv) {
  using sftb::cli::Command;
  CLI::App app{"Entropy-gap bounds for subshifts of finite type"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sftbound 0.1.0");

  sftb::cli::RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--theta", cfg.theta, "metric base theta > 1");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--tol", cfg.tolerance, "tolerance for asserted inequalities");
    sub->add_option("--out", cfg.output_path, "write <out>.json and <out>.csv");
  };
  auto add_matrix = [&cfg](CLI::App* sub) {
    sub->add_option("--matrix", cfg.matrix_path, "transition matrix JSON")->required();
  };

  auto* analyze = app.add_subcommand("analyze", "Perron data, Parry measure, structure flags");
  add_matrix(analyze);
  add_common(analyze);

  auto* entropy = app.add_subcommand("entropy", "variational principle and gap identity");
  add_matrix(entropy);
  add_common(entropy);
  entropy->add_option("--measure", cfg.measure_path, "Markov measure JSON (otherwise sampled)");
  entropy->add_option("--samples", cfg.samples, "number of sampled measures");

  auto* pinsker = app.add_subcommand("pinsker", "randomized Pinsker inequality check");
  add_common(pinsker);
  pinsker->add_option("--samples", cfg.samples, "pairs per dimension");

  auto* decay = app.add_subcommand("transfer-decay", "transfer operator identities and decay");
  add_matrix(decay);
  add_common(decay);
  decay->add_option("--depth", cfg.depth, "cylinder depth of test functions");

  auto* verify = app.add_subcommand("verify", "ratio scan of the effective bound");
  add_matrix(verify);
  add_common(verify);
  verify->add_option("--depth", cfg.depth, "depth of sampled functions");
  verify->add_option("--samples", cfg.samples, "number of sampled measures");
  verify->add_option("--function", cfg.function_path, "fixed observable JSON");

  auto* hole = app.add_subcommand("hole", "survivor entropy of cylinder holes");
  add_matrix(hole);
  add_common(hole);
  hole->add_option("--word", cfg.word, "single hole word (otherwise scan a family)");
  hole->add_option("--max-hole-depth", cfg.max_hole_depth, "largest hole depth in the scan");

  auto* model = app.add_subcommand("model-dim", "dimension bound for an expanding model");
  add_common(model);
  model->add_option("--model", cfg.model_path, "preset name or model JSON")->required();
  model->add_option("--x0", cfg.x0, "ball centre");
  model->add_option("--delta", cfg.delta, "ball radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sftb::cli::kExitInputError;
  }

  for (const auto* sub : app.get_subcommands()) {
    cfg.command = *sftb::cli::parse_command(sub->get_name());
  }
  return sftb::cli::execute(cfg, std::cout, std::cerr);
}
