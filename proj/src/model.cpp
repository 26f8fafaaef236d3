#include "innet/model.hpp"

#include <cmath>
#include <string>

#include "innet/errors.hpp"

namespace innet {

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::kSigmoid: return "sigmoid";
    case Activation::kTanh: return "tanh";
  }
  return "sigmoid";
}

Activation activation_from_name(std::string_view name) {
  if (name == "sigmoid") return Activation::kSigmoid;
  if (name == "tanh") return Activation::kTanh;
  throw ParseError("unknown activation '" + std::string(name) + "'");
}

double activate(Activation a, double z) {
  switch (a) {
    case Activation::kSigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Activation::kTanh: return std::tanh(z);
  }
  return 0.0;
}

Vector node_output(const HiddenNode& node, Activation a, const Matrix& x) {
  if (x.cols() != node.weights.size()) {
    throw ContractError("node_output: input dimension mismatch");
  }
  Vector z = x * node.weights;
  z.array() += node.bias;
  for (Index i = 0; i < z.size(); ++i) z(i) = activate(a, z(i));
  return z;
}

Matrix hidden_matrix(const NetworkModel& model, const Matrix& x) {
  if (model.nodes.empty()) {
    throw ContractError("hidden_matrix: model has no nodes");
  }
  Matrix h(x.rows(), model.node_count());
  for (Index j = 0; j < model.node_count(); ++j) {
    h.col(j) = node_output(model.nodes[j], model.activation, x);
  }
  return h;
}

Matrix forward_normalized(const NetworkModel& model, const Matrix& x) {
  if (model.nodes.empty()) {
    return Matrix::Zero(x.rows(), model.beta.cols());
  }
  if (x.cols() != model.nodes.front().weights.size()) {
    throw ContractError("forward: input dimension mismatch");
  }
  return hidden_matrix(model, x) * model.beta;
}

Matrix forward(const NetworkModel& model, const Matrix& x) {
  return denormalize_outputs(forward_normalized(model, x), model.norm);
}

}  // namespace innet
