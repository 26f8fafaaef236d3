#include "innet/builder.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "innet/errors.hpp"
#include "innet/metrics.hpp"
#include "innet/rng.hpp"

namespace innet {

namespace {

constexpr double kDegeneracyScale = 1e-12;

bool degenerate(const Vector& g) {
  return g.norm() < kDegeneracyScale * std::sqrt(static_cast<double>(g.size()));
}

double residual_rmse(const Matrix& e) {
  return std::sqrt(e.squaredNorm() /
                   static_cast<double>(e.rows() * e.cols()));
}

void validate(const TrainerConfig& c, const Dataset& train_set) {
  if (train_set.rows() == 0) throw ContractError("train: empty dataset");
  if (c.max_nodes < 1) throw ContractError("train: max_nodes must be >= 1");
  if (c.tol <= 0.0) throw ContractError("train: tol must be positive");
  if (c.algorithm != Algorithm::kIrw) {
    if (c.pool_size < 1) throw ContractError("train: pool_size must be >= 1");
    if (!(c.r > 0.0 && c.r < 1.0)) throw ContractError("train: r must be in (0,1)");
    if (c.scope_list.empty()) throw ContractError("train: scope_list is empty");
    for (double z : c.scope_list) {
      if (z <= 0.0) throw ContractError("train: scopes must be positive");
    }
  }
}

HiddenNode draw_node(std::mt19937_64& rng, Index input_dim, double scope) {
  std::uniform_real_distribution<double> unif(-scope, scope);
  HiddenNode node;
  node.weights.resize(input_dim);
  for (Index k = 0; k < input_dim; ++k) node.weights(k) = unif(rng);
  node.bias = unif(rng);
  return node;
}

}  // namespace

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kIrw: return "irw";
    case Algorithm::kInn: return "inn";
    case Algorithm::kInPlus: return "inplus";
  }
  return "inn";
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "irw") return Algorithm::kIrw;
  if (name == "inn") return Algorithm::kInn;
  if (name == "inplus") return Algorithm::kInPlus;
  throw ParseError("unknown algorithm '" + std::string(name) + "'");
}

double gamma(const GammaSchedule& schedule, const Matrix& residual,
             int node_index) {
  if (node_index < 1) throw ContractError("gamma: node_index must be >= 1");
  const double mu = (1.0 - schedule.r) / (node_index + 1.0);
  const double num = 1.0 - schedule.r - mu;
  return num / std::max(residual.squaredNorm(), schedule.eps_floor);
}

std::pair<double, double> score_candidate(const Vector& g,
                                          const Matrix& residual) {
  if (g.size() != residual.rows()) {
    throw ContractError("score_candidate: length mismatch");
  }
  if (degenerate(g)) {
    throw DegenerateNodeError("score_candidate: zero-norm candidate output");
  }
  const double score =
      (residual.transpose() * g).squaredNorm() / g.squaredNorm();
  const double denom = residual.squaredNorm();
  const double cos2 = denom > 0.0 ? score / denom : 0.0;
  return {score, cos2};
}

std::vector<Candidate> candidate_pool(const PoolKey& key,
                                      const std::vector<double>& scope_list,
                                      int pool_size, const Matrix& x,
                                      Activation activation,
                                      const Matrix& residual) {
  if (pool_size < 1) throw ContractError("candidate_pool: pool_size < 1");
  const Index total =
      static_cast<Index>(scope_list.size()) * static_cast<Index>(pool_size);

  // Draw all candidate parameters, then evaluate every output column in one
  // matrix product; per-candidate evaluation is far too slow for the
  // hundreds-of-scopes pools used on the benchmark configs.
  Matrix weights(x.cols(), total);
  Vector biases(total);
  std::vector<HiddenNode> nodes(static_cast<std::size_t>(total));
  Index col = 0;
  for (std::size_t si = 0; si < scope_list.size(); ++si) {
    for (int ci = 0; ci < pool_size; ++ci, ++col) {
      auto rng = substream(key.seed, static_cast<std::uint64_t>(key.node_index),
                           static_cast<std::uint64_t>(key.attempt), si,
                           static_cast<std::uint64_t>(ci));
      nodes[static_cast<std::size_t>(col)] =
          draw_node(rng, x.cols(), scope_list[si]);
      weights.col(col) = nodes[static_cast<std::size_t>(col)].weights;
      biases(col) = nodes[static_cast<std::size_t>(col)].bias;
    }
  }

  Matrix outputs = x * weights;
  outputs.rowwise() += biases.transpose();
  if (activation == Activation::kSigmoid) {
    outputs = (1.0 + (-outputs.array()).exp()).inverse();
  } else {
    outputs = outputs.array().tanh();
  }

  const Matrix projections = residual.transpose() * outputs;  // m x total
  const double residual_energy = residual.squaredNorm();
  const double degeneracy_cut =
      kDegeneracyScale * std::sqrt(static_cast<double>(x.rows()));

  std::vector<Candidate> pool;
  pool.reserve(static_cast<std::size_t>(total));
  for (Index c = 0; c < total; ++c) {
    const double gnorm2 = outputs.col(c).squaredNorm();
    if (std::sqrt(gnorm2) < degeneracy_cut) continue;
    Candidate cand;
    cand.node = std::move(nodes[static_cast<std::size_t>(c)]);
    cand.g = outputs.col(c);
    cand.score = projections.col(c).squaredNorm() / gnorm2;
    cand.cos2 = residual_energy > 0.0 ? cand.score / residual_energy : 0.0;
    pool.push_back(std::move(cand));
  }
  if (pool.empty()) {
    throw EmptyPoolError("candidate_pool: all candidates degenerate");
  }
  return pool;
}

Selection select_node(const std::vector<Candidate>& pool,
                      const Matrix& residual, double gamma_value) {
  if (pool.empty()) throw ContractError("select_node: empty pool");
  std::size_t best = 0;
  for (std::size_t i = 1; i < pool.size(); ++i) {
    if (pool[i].cos2 > pool[best].cos2) best = i;
  }
  Selection sel;
  sel.index = best;
  sel.constraint_satisfied =
      pool[best].cos2 >= gamma_value * residual.squaredNorm();
  return sel;
}

Eigen::RowVectorXd local_beta(const Vector& g, const Matrix& residual) {
  if (g.size() != residual.rows()) {
    throw ContractError("local_beta: length mismatch");
  }
  const double gnorm2 = g.squaredNorm();
  if (gnorm2 == 0.0) {
    throw DegenerateNodeError("local_beta: zero-norm node output");
  }
  return (g.transpose() * residual) / gnorm2;
}

std::pair<NetworkModel, TrainingTrace> train(const TrainerConfig& config,
                                             const Dataset& train_set,
                                             const Dataset* test_set) {
  using clock = std::chrono::steady_clock;
  validate(config, train_set);

  const Matrix& targets = train_set.y;
  const Index n = train_set.rows();
  const Index m = train_set.output_dim();

  NetworkModel model;
  model.activation = config.activation;
  model.task = train_set.task;
  model.beta = Matrix::Zero(0, m);

  TrainingTrace trace;
  const auto run_start = clock::now();

  Matrix residual = targets;
  double rmse_now = residual_rmse(residual);

  Matrix hidden(n, 0);
  GrevilleState gstate;
  const GammaSchedule schedule{config.r, 1e-24};

  for (int node_index = 1;
       rmse_now > config.tol && node_index <= config.max_nodes; ++node_index) {
    const auto node_start = clock::now();
    NodeRecord rec;
    rec.node_index = node_index;

    if (config.algorithm == Algorithm::kIrw) {
      // Baseline: one random draw per node, local output weight.
      auto rng = substream(config.seed,
                           static_cast<std::uint64_t>(node_index));
      HiddenNode node = draw_node(rng, train_set.input_dim(), config.scope_fixed);
      const Vector g = node_output(node, config.activation, train_set.x);
      std::tie(rec.selected_score, rec.cos2) = score_candidate(g, residual);
      rec.constraint_satisfied = true;
      const Eigen::RowVectorXd beta_row = local_beta(g, residual);
      residual.noalias() -= g * beta_row;
      model.nodes.push_back(std::move(node));
      model.beta.conservativeResize(node_index, m);
      model.beta.row(node_index - 1) = beta_row;
    } else {
      rec.gamma = gamma(schedule, residual, node_index);
      Candidate chosen;
      bool have_chosen = false;
      bool satisfied = false;
      for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        auto pool = candidate_pool({config.seed, node_index, attempt},
                                   config.scope_list, config.pool_size,
                                   train_set.x, config.activation, residual);
        const Selection sel = select_node(pool, residual, rec.gamma);
        Candidate& cand = pool[sel.index];
        if (!have_chosen || cand.cos2 > chosen.cos2) {
          chosen = std::move(cand);
          have_chosen = true;
        }
        if (sel.constraint_satisfied) {
          satisfied = true;
          break;
        }
      }
      rec.constraint_satisfied = satisfied;
      rec.fallback_used = !satisfied;  // best-seen candidate still reduces ||e||
      rec.selected_score = chosen.score;
      rec.cos2 = chosen.cos2;

      hidden.conservativeResize(Eigen::NoChange, node_index);
      hidden.col(node_index - 1) = chosen.g;

      if (config.algorithm == Algorithm::kInn) {
        model.beta = lstsq(hidden, targets);
      } else {
        auto appended = greville_append(
            gstate, hidden.leftCols(node_index - 1), chosen.g);
        Matrix beta =
            greville_update_beta(gstate, appended.d, appended.b, targets);
        gstate.pinv = std::move(appended.pinv);
        gstate.beta = beta;
        gstate.node_count = node_index;
        model.beta = std::move(beta);
      }
      residual = targets - hidden * model.beta;
      model.nodes.push_back(std::move(chosen.node));
    }

    rmse_now = residual_rmse(residual);
    rec.residual_rmse = rmse_now;
    rec.elapsed_seconds =
        std::chrono::duration<double>(clock::now() - node_start).count();
    trace.nodes.push_back(rec);
  }

  trace.train_rmse = rmse_now;
  trace.wall_seconds =
      std::chrono::duration<double>(clock::now() - run_start).count();
  if (test_set != nullptr) {
    trace.test_rmse =
        rmse(forward_normalized(model, test_set->x), test_set->y);
  }
  return {std::move(model), std::move(trace)};
}

}  // namespace innet
