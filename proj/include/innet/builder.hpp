#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "innet/data.hpp"
#include "innet/linalg.hpp"
#include "innet/model.hpp"

namespace innet {

enum class Algorithm { kIrw, kInn, kInPlus };

const char* algorithm_name(Algorithm a);
Algorithm algorithm_from_name(std::string_view name);

struct TrainerConfig {
  Algorithm algorithm = Algorithm::kInn;
  Activation activation = Activation::kSigmoid;
  std::vector<double> scope_list;  // candidate scopes (inn/inplus)
  double scope_fixed = 1.0;        // single scope for irw
  int pool_size = 10;              // candidates drawn per scope
  double r = 0.9;                  // constraint schedule rate
  double tol = 0.05;               // target training RMSE
  int max_nodes = 30;
  std::uint64_t seed = 0;
  int max_retries = 5;  // fresh pools drawn after a constraint miss
};

// Dynamic threshold sequence for the angle constraint:
// gamma_L = (1 - r - mu_L) / max(||E||^2, eps_floor), mu_L = (1 - r)/(L + 1).
// A perfectly aligned candidate (cos^2 = 1) always satisfies the constraint
// since gamma_L * ||E||^2 < 1.
struct GammaSchedule {
  double r = 0.9;
  double eps_floor = 1e-24;
};

double gamma(const GammaSchedule& schedule, const Matrix& residual, int node_index);

struct Candidate {
  HiddenNode node;
  Vector g;
  double score = 0.0;  // sum_q <E_q, g>^2 / ||g||^2
  double cos2 = 0.0;   // score / ||E||_F^2
};

/// (score, cos2) of candidate output g against the residual matrix.
std::pair<double, double> score_candidate(const Vector& g, const Matrix& residual);

// Identifies the RNG substream family for one pool draw.
struct PoolKey {
  std::uint64_t seed = 0;
  int node_index = 1;
  int attempt = 0;
};

/// Draws pool_size candidates per scope, each weight/bias uniform on
/// [-zeta, zeta], from the (node, attempt, scope, candidate)-indexed
/// substream. Degenerate candidates (||g|| < 1e-12 sqrt(N)) are dropped.
std::vector<Candidate> candidate_pool(const PoolKey& key,
                                      const std::vector<double>& scope_list,
                                      int pool_size, const Matrix& x,
                                      Activation activation,
                                      const Matrix& residual);

struct Selection {
  std::size_t index = 0;
  bool constraint_satisfied = false;
};

/// Argmax-by-cos2 over the pool, ties broken by lowest index.
Selection select_node(const std::vector<Candidate>& pool, const Matrix& residual,
                      double gamma_value);

/// Single-node output weights <E_q, g> / ||g||^2, one entry per output.
Eigen::RowVectorXd local_beta(const Vector& g, const Matrix& residual);

struct NodeRecord {
  int node_index = 0;
  double residual_rmse = 0.0;
  double selected_score = 0.0;
  double cos2 = 0.0;
  double gamma = 0.0;
  bool constraint_satisfied = false;
  bool fallback_used = false;
  double elapsed_seconds = 0.0;
};

struct TrainingTrace {
  std::vector<NodeRecord> nodes;
  double train_rmse = 0.0;
  std::optional<double> test_rmse;
  double wall_seconds = 0.0;
};

/// Runs the configured constructive trainer on a normalized training set.
/// Stops when training RMSE <= tol or max_nodes is reached. test_set, when
/// given, must be normalized with the training set's parameters.
std::pair<NetworkModel, TrainingTrace> train(
    const TrainerConfig& config, const Dataset& train_set,
    const Dataset* test_set = nullptr);

}  // namespace innet
