#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "innet/linalg.hpp"

namespace innet {

enum class Task { kRegression, kClassification };

struct Dataset {
  Matrix x;  // N x d
  Matrix y;  // N x m (one-hot for classification)
  Task task = Task::kRegression;
  std::vector<std::string> feature_names;

  Index rows() const { return x.rows(); }
  Index input_dim() const { return x.cols(); }
  Index output_dim() const { return y.cols(); }
};

// Min-max scaling parameters fitted on a training set. Constant features
// map to 0. Outputs are scaled only for regression tasks.
struct NormParams {
  Vector x_min, x_max;
  Vector y_min, y_max;
  bool scale_outputs = false;
};

struct CsvSchema {
  Task task = Task::kRegression;
  bool header = false;
  // Target column indices (0-based). Empty means "last column".
  std::vector<Index> target_cols;
};

/// Parses "task=regression,target=last,header=0" style schema strings.
/// target accepts "last" or a +-separated index list (e.g. "target=3+4").
CsvSchema parse_schema(const std::string& spec);

Dataset load_csv(const std::string& path, const CsvSchema& schema);
void save_csv(const Dataset& ds, const std::string& path);

std::pair<Dataset, NormParams> normalize(const Dataset& ds);
Dataset apply_normalization(const Dataset& ds, const NormParams& p);
Matrix denormalize_outputs(const Matrix& y, const NormParams& p);

/// The 1-D benchmark function 1/((x-0.3)^2+0.01) + 1/((x-0.9)^2+0.04) - 6.
double synth_target(double x);

/// n samples with x uniform on [0,1] from the seeded stream and
/// y = synth_target(x) plus optional gaussian noise.
Dataset synth_function(Index n, std::uint64_t seed, double noise = 0.0);

/// Disjoint train/test row subsets chosen by a seeded shuffle.
std::pair<Dataset, Dataset> split(const Dataset& ds, Index train_count,
                                  Index test_count, std::uint64_t seed);

}  // namespace innet
