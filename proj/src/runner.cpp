#include "innet/runner.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "innet/errors.hpp"
#include "innet/io.hpp"
#include "innet/metrics.hpp"

namespace innet {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

struct PreparedData {
  Dataset train_raw, test_raw;    // original units
  Dataset train_norm, test_norm;  // training space
  NormParams norm;
  bool has_test = false;
};

PreparedData prepare_data(const RunConfig& config, std::uint64_t seed) {
  PreparedData out;
  Dataset full;
  if (config.dataset.source == DatasetSpec::Source::kSynth) {
    full = synth_function(config.dataset.synth_n, seed, config.dataset.noise);
  } else {
    full = load_csv(config.dataset.csv_path, config.dataset.schema);
  }
  Index train_n = config.dataset.train_count;
  Index test_n = config.dataset.test_count;
  if (train_n <= 0) train_n = full.rows() - test_n;
  std::tie(out.train_raw, out.test_raw) = split(full, train_n, test_n, seed);
  std::tie(out.train_norm, out.norm) = normalize(out.train_raw);
  out.has_test = test_n > 0;
  if (out.has_test) {
    out.test_norm = apply_normalization(out.test_raw, out.norm);
  }
  return out;
}

struct RepeatResult {
  std::uint64_t seed = 0;
  double train_rmse = 0.0;
  std::optional<double> test_rmse;
  std::optional<double> test_accuracy;
  int node_count = 0;
  double wall_seconds = 0.0;
  std::vector<double> rmse_curve;
  std::vector<double> test_errors;  // flattened pred - target, training space
};

RepeatResult run_repeat(const RunConfig& config, std::uint64_t seed) {
  TrainerConfig tc = config.trainer;
  tc.seed = seed;
  const PreparedData data = prepare_data(config, seed);
  auto [model, trace] =
      train(tc, data.train_norm, data.has_test ? &data.test_norm : nullptr);

  RepeatResult r;
  r.seed = seed;
  r.train_rmse = trace.train_rmse;
  r.test_rmse = trace.test_rmse;
  r.node_count = static_cast<int>(trace.nodes.size());
  r.wall_seconds = trace.wall_seconds;
  for (const auto& rec : trace.nodes) r.rmse_curve.push_back(rec.residual_rmse);
  if (data.has_test) {
    const Matrix pred = forward_normalized(model, data.test_norm.x);
    if (model.task == Task::kClassification) {
      r.test_accuracy = accuracy(pred, data.test_norm.y);
    }
    const Matrix err = pred - data.test_norm.y;
    r.test_errors.assign(err.data(), err.data() + err.size());
  }
  return r;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void write_curve_csv(const std::string& path, const std::vector<double>& curve) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "node_index,mean_rmse\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out << (i + 1) << ',' << fmt(curve[i]) << '\n';
  }
}

void write_kde_csv(const std::string& path, const DensityEstimate& est) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << "error,density\n";
  for (Index i = 0; i < est.grid.size(); ++i) {
    out << fmt(est.grid(i)) << ',' << fmt(est.density(i)) << '\n';
  }
}

// Mean per-node convergence over repeats; shorter runs are padded with
// their final RMSE so early stopping does not bias the tail.
std::vector<double> mean_curve(const std::vector<RepeatResult>& repeats) {
  std::size_t longest = 0;
  for (const auto& r : repeats) longest = std::max(longest, r.rmse_curve.size());
  std::vector<double> out(longest, 0.0);
  if (longest == 0) return out;
  for (const auto& r : repeats) {
    for (std::size_t i = 0; i < longest; ++i) {
      const double v = i < r.rmse_curve.size()
                           ? r.rmse_curve[i]
                           : (r.rmse_curve.empty() ? 0.0 : r.rmse_curve.back());
      out[i] += v;
    }
  }
  for (double& v : out) v /= static_cast<double>(repeats.size());
  return out;
}

json config_to_json(const RunConfig& config) {
  json c;
  c["algorithm"] = algorithm_name(config.trainer.algorithm);
  c["activation"] = activation_name(config.trainer.activation);
  c["lambda"] = config.trainer.scope_fixed;
  c["zeta"] = config.trainer.scope_list;
  c["t_max"] = config.trainer.pool_size;
  c["r"] = config.trainer.r;
  c["tol"] = config.trainer.tol;
  c["l_max"] = config.trainer.max_nodes;
  c["seed"] = config.trainer.seed;
  c["max_retries"] = config.trainer.max_retries;
  c["repeats"] = config.repeats;
  c["dataset"] = config.dataset.source == DatasetSpec::Source::kSynth
                     ? "synth"
                     : config.dataset.csv_path;
  c["train_count"] = config.dataset.train_count;
  c["test_count"] = config.dataset.test_count;
  return c;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
  const KvConfig kv = KvConfig::parse_file(path);
  RunConfig config;
  config.trainer.algorithm = algorithm_from_name(kv.get_string("algorithm", "inn"));
  config.trainer.activation =
      activation_from_name(kv.get_string("activation", "sigmoid"));
  config.trainer.scope_fixed = kv.get_double("lambda", 1.0);
  config.trainer.scope_list = parse_range(kv.get_string("zeta", "1"));
  config.trainer.pool_size = static_cast<int>(kv.get_long("t_max", 10));
  config.trainer.r = kv.get_double("r", 0.9);
  config.trainer.tol = kv.get_double("tol", 0.05);
  config.trainer.max_nodes = static_cast<int>(kv.get_long("l_max", 30));
  config.trainer.seed = static_cast<std::uint64_t>(kv.get_long("seed", 0));
  config.trainer.max_retries = static_cast<int>(kv.get_long("max_retries", 5));
  config.repeats = static_cast<int>(kv.get_long("repeats", 1));
  if (config.repeats < 1) throw ParseError("config: repeats must be >= 1");

  const std::string source = kv.get_string("dataset", "synth");
  if (source == "synth") {
    config.dataset.source = DatasetSpec::Source::kSynth;
    config.dataset.synth_n = kv.get_long("synth_n", 2400);
    config.dataset.noise = kv.get_double("noise", 0.0);
  } else if (source == "csv") {
    config.dataset.source = DatasetSpec::Source::kCsv;
    config.dataset.csv_path = kv.get_string("csv_path");
    config.dataset.schema = parse_schema(kv.get_string("schema", "target=last"));
  } else {
    throw ParseError("config: dataset must be 'synth' or 'csv'");
  }
  config.dataset.train_count = kv.get_long("train_count", 2000);
  config.dataset.test_count = kv.get_long("test_count", 400);
  config.output_dir = kv.get_string("output_dir", ".");
  return config;
}

SweepSpec parse_sweep(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) {
    throw ParseError("sweep: expected param=v1,v2,...");
  }
  SweepSpec sweep;
  sweep.param = spec.substr(0, eq);
  if (sweep.param != "pool_size" && sweep.param != "scope") {
    throw ParseError("sweep: unknown parameter '" + sweep.param + "'");
  }
  std::stringstream ss(spec.substr(eq + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      sweep.values.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw ParseError("sweep: bad value '" + tok + "'");
    }
  }
  if (sweep.values.empty()) throw ParseError("sweep: no values");
  return sweep;
}

int run_train(const RunConfig& config) {
  fs::create_directories(config.output_dir);
  const PreparedData data = prepare_data(config, config.trainer.seed);
  auto [model, trace] = train(config.trainer, data.train_norm,
                              data.has_test ? &data.test_norm : nullptr);
  model.norm = data.norm;

  const fs::path dir(config.output_dir);
  save_model(model, (dir / "model.json").string());
  write_trace(trace, (dir / "trace.csv").string());
  write_trace_timing(trace, (dir / "trace_timing.csv").string());
  save_csv(data.train_raw, (dir / "train.csv").string());
  if (data.has_test) save_csv(data.test_raw, (dir / "test.csv").string());

  std::cout << "nodes=" << trace.nodes.size() << '\n';
  std::cout << "train_rmse=" << fmt(trace.train_rmse) << '\n';
  if (trace.test_rmse) {
    std::cout << "test_rmse=" << fmt(*trace.test_rmse) << '\n';
  }
  std::cout << "seconds=" << fmt(trace.wall_seconds) << '\n';
  return 0;
}

int run_bench(const RunConfig& config, const std::optional<SweepSpec>& sweep) {
  fs::create_directories(config.output_dir);
  const fs::path dir(config.output_dir);

  struct Pass {
    std::string label;
    RunConfig config;
  };
  std::vector<Pass> passes;
  if (!sweep) {
    passes.push_back({"", config});
  } else {
    for (double value : sweep->values) {
      RunConfig variant = config;
      std::string tag;
      if (sweep->param == "pool_size") {
        variant.trainer.pool_size = static_cast<int>(value);
        tag = "pool_size_" + std::to_string(static_cast<int>(value));
      } else {
        variant.trainer.scope_list = {value};
        tag = "scope_" + fmt(value);
      }
      passes.push_back({tag, variant});
    }
  }

  json report;
  report["config"] = config_to_json(config);
  json runs = json::array();
  json timing_runs = json::array();

  for (const auto& pass : passes) {
    std::vector<RepeatResult> repeats;
    for (int i = 0; i < pass.config.repeats; ++i) {
      repeats.push_back(run_repeat(pass.config, pass.config.trainer.seed + i));
    }

    json run;
    run["label"] = pass.label;
    json per_repeat = json::array();
    std::vector<double> train_rmses, test_rmses, accuracies, node_counts,
        seconds;
    std::vector<double> pooled_errors;
    for (const auto& r : repeats) {
      json rep;
      rep["seed"] = r.seed;
      rep["train_rmse"] = r.train_rmse;
      if (r.test_rmse) rep["test_rmse"] = *r.test_rmse;
      if (r.test_accuracy) rep["accuracy"] = *r.test_accuracy;
      rep["node_count"] = r.node_count;
      per_repeat.push_back(std::move(rep));
      train_rmses.push_back(r.train_rmse);
      if (r.test_rmse) test_rmses.push_back(*r.test_rmse);
      if (r.test_accuracy) accuracies.push_back(*r.test_accuracy);
      node_counts.push_back(r.node_count);
      seconds.push_back(r.wall_seconds);
      pooled_errors.insert(pooled_errors.end(), r.test_errors.begin(),
                           r.test_errors.end());
    }
    run["repeats"] = std::move(per_repeat);
    json agg;
    agg["train_rmse_mean"] = mean_of(train_rmses);
    agg["train_rmse_std"] = std_of(train_rmses);
    if (!test_rmses.empty()) {
      agg["test_rmse_mean"] = mean_of(test_rmses);
      agg["test_rmse_std"] = std_of(test_rmses);
    }
    if (!accuracies.empty()) {
      agg["accuracy_mean"] = mean_of(accuracies);
      agg["accuracy_std"] = std_of(accuracies);
    }
    agg["node_count_mean"] = mean_of(node_counts);
    run["aggregates"] = std::move(agg);
    runs.push_back(std::move(run));

    json trun;
    trun["label"] = pass.label;
    trun["per_repeat_seconds"] = seconds;
    trun["mean_seconds"] = mean_of(seconds);
    timing_runs.push_back(std::move(trun));

    const std::string suffix = pass.label.empty() ? "" : "_" + pass.label;
    write_curve_csv((dir / ("convergence" + suffix + ".csv")).string(),
                    mean_curve(repeats));
    if (pooled_errors.size() >= 2) {
      Eigen::Map<const Vector> errs(pooled_errors.data(),
                                    static_cast<Index>(pooled_errors.size()));
      try {
        write_kde_csv((dir / ("kde" + suffix + ".csv")).string(),
                      kde(Vector(errs)));
      } catch (const DegenerateNodeError&) {
        // all errors identical; no density to report
      }
    }
  }

  report["runs"] = std::move(runs);
  report["timing"] = json{{"runs", std::move(timing_runs)}};

  std::ofstream out(dir / "report.json");
  if (!out) throw ParseError("cannot write report.json");
  out << report.dump(2) << '\n';
  std::cout << "report=" << (dir / "report.json").string() << '\n';
  return 0;
}

int run_eval(const std::string& model_path, const std::string& data_path,
             const std::string& schema_spec) {
  const NetworkModel model = load_model(model_path);
  CsvSchema schema = parse_schema(schema_spec);
  schema.task = model.task;  // model decides the task
  const Dataset raw = load_csv(data_path, schema);
  if (raw.input_dim() != model.norm.x_min.size()) {
    throw ContractError("eval: model expects " +
                        std::to_string(model.norm.x_min.size()) +
                        " features, dataset has " +
                        std::to_string(raw.input_dim()));
  }
  const Dataset ds = apply_normalization(raw, model.norm);
  const Matrix pred = forward_normalized(model, ds.x);
  if (pred.cols() != ds.y.cols()) {
    throw ContractError("eval: output dimension mismatch");
  }
  std::cout << "rmse=" << fmt(rmse(pred, ds.y)) << '\n';
  if (model.task == Task::kClassification) {
    std::cout << "accuracy=" << fmt(accuracy(pred, ds.y)) << '\n';
  }
  return 0;
}

}  // namespace innet
