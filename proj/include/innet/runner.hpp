#pragma once

#include <optional>
#include <string>
#include <vector>

#include "innet/builder.hpp"
#include "innet/data.hpp"

namespace innet {

struct DatasetSpec {
  enum class Source { kSynth, kCsv };
  Source source = Source::kSynth;
  Index synth_n = 2400;
  double noise = 0.0;
  std::string csv_path;
  CsvSchema schema;
  Index train_count = 2000;
  Index test_count = 400;
};

struct RunConfig {
  TrainerConfig trainer;
  DatasetSpec dataset;
  int repeats = 1;
  std::string output_dir = ".";
};

RunConfig load_run_config(const std::string& path);

// Benchmark sweep over pool_size or a single scope value,
// e.g. "pool_size=1,10,100" or "scope=1,15,50".
struct SweepSpec {
  std::string param;
  std::vector<double> values;
};

SweepSpec parse_sweep(const std::string& spec);

int run_train(const RunConfig& config);
int run_bench(const RunConfig& config,
              const std::optional<SweepSpec>& sweep = std::nullopt);
int run_eval(const std::string& model_path, const std::string& data_path,
             const std::string& schema_spec);

}  // namespace innet
