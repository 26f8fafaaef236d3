#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "innet/errors.hpp"
#include "innet/io.hpp"
#include "innet/runner.hpp"

using namespace innet;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("innet_run_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string synth_config(const fs::path& out_dir, const std::string& extra = "") {
  return "algorithm = inn\n"
         "zeta = 1:5:50\n"
         "t_max = 5\n"
         "tol = 0.03\n"
         "l_max = 15\n"
         "seed = 42\n"
         "dataset = synth\n"
         "synth_n = 600\n"
         "train_count = 500\n"
         "test_count = 100\n"
         "output_dir = " + out_dir.string() + "\n" + extra;
}

}  // namespace

TEST_CASE("parse_range expands start:step:end") {
  auto r = parse_range("1:1:200");
  REQUIRE(r.size() == 200);
  CHECK(r.front() == 1.0);
  CHECK(r.back() == 200.0);
  auto r2 = parse_range("1:0.1:3");
  REQUIRE(r2.size() == 21);
  CHECK(r2.back() == doctest::Approx(3.0));
  CHECK(parse_range("15").size() == 1);
  CHECK_THROWS_AS(parse_range("1:2"), ParseError);
}

TEST_CASE("kv config parses comments and types") {
  KvConfig kv = KvConfig::parse_string("a = 1.5 # comment\n# full comment\nb=x\n");
  CHECK(kv.get_double("a", 0.0) == 1.5);
  CHECK(kv.get_string("b") == "x");
  CHECK(kv.get_long("missing", 7) == 7);
  CHECK_THROWS_AS(kv.get_string("missing"), ParseError);
  CHECK_THROWS_AS(KvConfig::parse_string("no equals\n"), ParseError);
}

TEST_CASE("run config round-trips the Table-style keys") {
  TempDir dir;
  write_file(dir.path / "cfg", synth_config(dir.path));
  RunConfig cfg = load_run_config((dir.path / "cfg").string());
  CHECK(cfg.trainer.algorithm == Algorithm::kInn);
  CHECK(cfg.trainer.pool_size == 5);
  CHECK(cfg.trainer.max_nodes == 15);
  CHECK(cfg.trainer.seed == 42);
  CHECK(cfg.dataset.train_count == 500);
  CHECK(cfg.dataset.test_count == 100);
}

TEST_CASE("train writes deterministic artifacts") {
  TempDir a, b;
  write_file(a.path / "cfg", synth_config(a.path));
  write_file(b.path / "cfg", synth_config(b.path));
  CHECK(run_train(load_run_config((a.path / "cfg").string())) == 0);
  CHECK(run_train(load_run_config((b.path / "cfg").string())) == 0);
  CHECK(read_file(a.path / "trace.csv") == read_file(b.path / "trace.csv"));
  CHECK(read_file(a.path / "model.json") == read_file(b.path / "model.json"));
  CHECK(!read_file(a.path / "trace.csv").empty());

  // Trace RMSE column non-increasing.
  std::ifstream trace(a.path / "trace.csv");
  std::string line;
  std::getline(trace, line);  // header
  double prev = 1e300;
  while (std::getline(trace, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double r = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(r <= prev + 1e-12);
    prev = r;
  }
}

TEST_CASE("missing dataset file fails with the path in the message") {
  TempDir dir;
  write_file(dir.path / "cfg",
             "algorithm = inn\nzeta = 1\ndataset = csv\n"
             "csv_path = /nonexistent/data.csv\nschema = target=last\n"
             "train_count = 10\ntest_count = 0\noutput_dir = " +
                 dir.path.string() + "\n");
  try {
    run_train(load_run_config((dir.path / "cfg").string()));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/data.csv") !=
          std::string::npos);
  }
}

TEST_CASE("eval on the training set reproduces the trace RMSE") {
  TempDir dir;
  write_file(dir.path / "cfg", synth_config(dir.path));
  REQUIRE(run_train(load_run_config((dir.path / "cfg").string())) == 0);

  // Capture eval stdout.
  std::stringstream captured;
  auto* old = std::cout.rdbuf(captured.rdbuf());
  const int rc = run_eval((dir.path / "model.json").string(),
                          (dir.path / "train.csv").string(), "target=last");
  std::cout.rdbuf(old);
  REQUIRE(rc == 0);
  const std::string out = captured.str();
  const auto pos = out.find("rmse=");
  REQUIRE(pos != std::string::npos);
  const double eval_rmse = std::stod(out.substr(pos + 5));

  // Final RMSE from the trace.
  std::ifstream trace(dir.path / "trace.csv");
  std::string line, last;
  std::getline(trace, line);
  while (std::getline(trace, line)) {
    if (!line.empty()) last = line;
  }
  const auto c1 = last.find(',');
  const auto c2 = last.find(',', c1 + 1);
  const double trace_rmse = std::stod(last.substr(c1 + 1, c2 - c1 - 1));
  CHECK(eval_rmse == doctest::Approx(trace_rmse).epsilon(1e-12));
}

TEST_CASE("eval rejects a feature-count mismatch") {
  TempDir dir;
  write_file(dir.path / "cfg", synth_config(dir.path));
  REQUIRE(run_train(load_run_config((dir.path / "cfg").string())) == 0);
  write_file(dir.path / "bad.csv", "1,2,3\n4,5,6\n");
  try {
    run_eval((dir.path / "model.json").string(),
             (dir.path / "bad.csv").string(), "target=last");
    FAIL("expected ContractError");
  } catch (const ContractError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("1") != std::string::npos);  // expected d
    CHECK(msg.find("2") != std::string::npos);  // actual d
  }
}

TEST_CASE("bench report has one record per repeat and exact means") {
  TempDir dir;
  write_file(dir.path / "cfg", synth_config(dir.path, "repeats = 3\n"));
  REQUIRE(run_bench(load_run_config((dir.path / "cfg").string())) == 0);
  auto report = nlohmann::json::parse(read_file(dir.path / "report.json"));
  const auto& run = report.at("runs").at(0);
  REQUIRE(run.at("repeats").size() == 3);
  double sum = 0.0;
  for (const auto& rep : run.at("repeats")) {
    sum += rep.at("train_rmse").get<double>();
  }
  CHECK(std::abs(run.at("aggregates").at("train_rmse_mean").get<double>() -
                 sum / 3.0) < 1e-12);
  CHECK(fs::exists(dir.path / "convergence.csv"));
  CHECK(fs::exists(dir.path / "kde.csv"));
}

TEST_CASE("bench sweep emits one curve per value") {
  TempDir dir;
  write_file(dir.path / "cfg", synth_config(dir.path));
  const SweepSpec sweep = parse_sweep("pool_size=1,4,8");
  REQUIRE(run_bench(load_run_config((dir.path / "cfg").string()), sweep) == 0);
  auto report = nlohmann::json::parse(read_file(dir.path / "report.json"));
  REQUIRE(report.at("runs").size() == 3);
  CHECK(fs::exists(dir.path / "convergence_pool_size_1.csv"));
  CHECK(fs::exists(dir.path / "convergence_pool_size_4.csv"));
  CHECK(fs::exists(dir.path / "convergence_pool_size_8.csv"));
}

TEST_CASE("bench output is byte-identical outside the timing section") {
  TempDir a, b;
  write_file(a.path / "cfg", synth_config(a.path, "repeats = 2\n"));
  write_file(b.path / "cfg", synth_config(b.path, "repeats = 2\n"));
  REQUIRE(run_bench(load_run_config((a.path / "cfg").string())) == 0);
  REQUIRE(run_bench(load_run_config((b.path / "cfg").string())) == 0);
  auto ra = nlohmann::ordered_json::parse(read_file(a.path / "report.json"));
  auto rb = nlohmann::ordered_json::parse(read_file(b.path / "report.json"));
  ra.erase("timing");
  rb.erase("timing");
  CHECK(ra.dump() == rb.dump());
  CHECK(read_file(a.path / "convergence.csv") ==
        read_file(b.path / "convergence.csv"));
  CHECK(read_file(a.path / "kde.csv") == read_file(b.path / "kde.csv"));
}

TEST_CASE("model json round-trips through save and load") {
  TempDir dir;
  write_file(dir.path / "cfg", synth_config(dir.path));
  REQUIRE(run_train(load_run_config((dir.path / "cfg").string())) == 0);
  NetworkModel model = load_model((dir.path / "model.json").string());
  CHECK(!model.nodes.empty());
  const std::string again = (dir.path / "model2.json").string();
  save_model(model, again);
  CHECK(read_file(dir.path / "model.json") == read_file(dir.path / "model2.json"));
}
