#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "innet/data.hpp"
#include "innet/errors.hpp"

using namespace innet;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    path = (std::filesystem::temp_directory_path() /
            ("innet_test_" + std::to_string(std::rand()) + ".csv"))
               .string();
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("load_csv splits the target column") {
  TempFile f("1,2\n3,4\n5,6\n");
  Dataset ds = load_csv(f.path, parse_schema("task=regression,target=last"));
  REQUIRE(ds.rows() == 3);
  CHECK(ds.x(0, 0) == 1);
  CHECK(ds.x(1, 0) == 3);
  CHECK(ds.x(2, 0) == 5);
  CHECK(ds.y(0, 0) == 2);
  CHECK(ds.y(1, 0) == 4);
  CHECK(ds.y(2, 0) == 6);
}

TEST_CASE("classification labels become one-hot rows") {
  TempFile f("0.1,0\n0.2,1\n0.3,2\n0.4,1\n");
  Dataset ds = load_csv(f.path, parse_schema("task=classification,target=last"));
  REQUIRE(ds.output_dim() == 3);
  for (Index i = 0; i < ds.rows(); ++i) {
    CHECK(ds.y.row(i).sum() == 1.0);
    CHECK(ds.y.row(i).maxCoeff() == 1.0);
    CHECK(ds.y.row(i).minCoeff() == 0.0);
  }
  CHECK(ds.y(2, 2) == 1.0);
}

TEST_CASE("non-numeric cell reports the line number") {
  TempFile f("1,2\nfoo,4\n");
  try {
    load_csv(f.path, parse_schema("target=last"));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("header line is consumed and feature names captured") {
  TempFile f("a,b,y\n1,2,3\n");
  Dataset ds = load_csv(f.path, parse_schema("target=last,header=1"));
  CHECK(ds.rows() == 1);
  REQUIRE(ds.feature_names.size() == 2);
  CHECK(ds.feature_names[0] == "a");
}

TEST_CASE("normalize maps columns to [0,1]") {
  Dataset ds;
  ds.x.resize(3, 1);
  ds.x << 0, 5, 10;
  ds.y = Matrix::Zero(3, 1);
  ds.y << 1, 2, 3;
  auto [norm, params] = normalize(ds);
  CHECK(norm.x(0, 0) == 0.0);
  CHECK(norm.x(1, 0) == 0.5);
  CHECK(norm.x(2, 0) == 1.0);
  CHECK(norm.y(0, 0) == 0.0);
  CHECK(norm.y(2, 0) == 1.0);
}

TEST_CASE("constant columns normalize to zero") {
  Dataset ds;
  ds.x = Matrix::Constant(3, 1, 7.0);
  ds.y.resize(3, 1);
  ds.y << 1, 2, 3;
  auto [norm, params] = normalize(ds);
  CHECK(norm.x.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("normalization round-trips on random data") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  Dataset ds;
  ds.x.resize(20, 3);
  ds.y.resize(20, 2);
  for (Index i = 0; i < 20; ++i) {
    for (Index j = 0; j < 3; ++j) ds.x(i, j) = unif(rng);
    for (Index j = 0; j < 2; ++j) ds.y(i, j) = unif(rng);
  }
  auto [norm, params] = normalize(ds);
  CHECK((norm.x.array() >= -1e-12).all());
  CHECK((norm.x.array() <= 1.0 + 1e-12).all());
  Matrix back = denormalize_outputs(norm.y, params);
  CHECK((back - ds.y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("synth target hand values") {
  CHECK(synth_target(0.3) == doctest::Approx(96.5).epsilon(1e-12));
  CHECK(synth_target(0.0) ==
        doctest::Approx(10.0 + 1.0 / 0.85 - 6.0).epsilon(1e-12));
  CHECK(synth_target(0.0) == doctest::Approx(5.17647).epsilon(1e-5));
}

TEST_CASE("synth dataset is seeded and noiseless by default") {
  Dataset a = synth_function(50, 123);
  Dataset b = synth_function(50, 123);
  CHECK((a.x - b.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);
  for (Index i = 0; i < a.rows(); ++i) {
    CHECK(a.y(i, 0) == synth_target(a.x(i, 0)));
    CHECK(a.x(i, 0) >= 0.0);
    CHECK(a.x(i, 0) <= 1.0);
  }
}

TEST_CASE("split produces disjoint subsets of the right size") {
  Dataset ds = synth_function(2400, 1);
  auto [train_set, test_set] = split(ds, 2000, 400, 9);
  CHECK(train_set.rows() == 2000);
  CHECK(test_set.rows() == 400);
  // x values are almost surely distinct, so disjointness can be checked on x.
  std::vector<double> train_x(train_set.x.data(), train_set.x.data() + 2000);
  std::sort(train_x.begin(), train_x.end());
  for (Index i = 0; i < 400; ++i) {
    CHECK(!std::binary_search(train_x.begin(), train_x.end(), test_set.x(i, 0)));
  }
}

TEST_CASE("split is deterministic for a fixed seed") {
  Dataset ds = synth_function(100, 2);
  auto [a1, b1] = split(ds, 60, 40, 3);
  auto [a2, b2] = split(ds, 60, 40, 3);
  CHECK((a1.x - a2.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK((b1.y - b2.y).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("split rejects oversized requests") {
  Dataset ds = synth_function(10, 3);
  CHECK_THROWS_AS(split(ds, 8, 3, 0), ContractError);
}

TEST_CASE("save_csv then load_csv round-trips exactly") {
  Dataset ds = synth_function(25, 4);
  TempFile f("");
  save_csv(ds, f.path);
  Dataset back = load_csv(f.path, parse_schema("target=last"));
  CHECK((back.x - ds.x).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.y - ds.y).cwiseAbs().maxCoeff() == 0.0);
}
