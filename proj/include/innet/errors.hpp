#pragma once

#include <stdexcept>

namespace innet {

// Precondition / shape violations.
struct ContractError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// SVD non-convergence and similar numerical breakdowns.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Candidate node whose output vector has (near-)zero norm.
struct DegenerateNodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// All candidates in a pool were degenerate.
struct EmptyPoolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// CSV / config / schema parse failures.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace innet
