#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "innet/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Constructive random-weight network trainer and benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  auto* cmd_train = app.add_subcommand("train", "Train a model from a config file");
  cmd_train->add_option("--config", config_path, "Config file")->required();

  std::string bench_config;
  std::string sweep_spec;
  auto* cmd_bench =
      app.add_subcommand("bench", "Repeated-trial benchmark with report output");
  cmd_bench->add_option("--config", bench_config, "Config file")->required();
  cmd_bench->add_option("--sweep", sweep_spec,
                        "Sweep spec, e.g. pool_size=1,10,100 or scope=1,15,50");

  std::string model_path, data_path, schema_spec = "target=last";
  auto* cmd_eval = app.add_subcommand("eval", "Evaluate a saved model on a CSV");
  cmd_eval->add_option("--model", model_path, "Model JSON")->required();
  cmd_eval->add_option("--data", data_path, "CSV dataset")->required();
  cmd_eval->add_option("--schema", schema_spec, "Dataset schema spec");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_train->parsed()) {
      return innet::run_train(innet::load_run_config(config_path));
    }
    if (cmd_bench->parsed()) {
      std::optional<innet::SweepSpec> sweep;
      if (!sweep_spec.empty()) sweep = innet::parse_sweep(sweep_spec);
      return innet::run_bench(innet::load_run_config(bench_config), sweep);
    }
    if (cmd_eval->parsed()) {
      return innet::run_eval(model_path, data_path, schema_spec);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
