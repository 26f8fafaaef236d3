#pragma once

#include <string_view>
#include <vector>

#include "innet/data.hpp"
#include "innet/linalg.hpp"

namespace innet {

enum class Activation { kSigmoid, kTanh };

const char* activation_name(Activation a);
Activation activation_from_name(std::string_view name);

double activate(Activation a, double z);

struct HiddenNode {
  Vector weights;  // length d
  double bias = 0.0;
};

// Immutable after training; safe for concurrent read-only inference.
struct NetworkModel {
  Activation activation = Activation::kSigmoid;
  std::vector<HiddenNode> nodes;
  Matrix beta;  // L x m
  NormParams norm;
  Task task = Task::kRegression;

  Index node_count() const { return static_cast<Index>(nodes.size()); }
};

/// g = activation(X w + b), one entry per sample row.
Vector node_output(const HiddenNode& node, Activation a, const Matrix& x);

/// N x L matrix whose column j is node_output(nodes[j]).
Matrix hidden_matrix(const NetworkModel& model, const Matrix& x);

/// Predictions in normalized output space: hidden_matrix(model, x) * beta.
/// A zero-node model predicts all zeros.
Matrix forward_normalized(const NetworkModel& model, const Matrix& x);

/// forward_normalized followed by output denormalization.
Matrix forward(const NetworkModel& model, const Matrix& x);

}  // namespace innet
