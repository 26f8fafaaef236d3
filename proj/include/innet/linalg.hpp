#pragma once

#include <Eigen/Dense>

namespace innet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Moore-Penrose pseudoinverse via SVD. Singular values below
/// rcond * sigma_max are treated as zero, rcond = eps * max(rows, cols).
Matrix pinv(const Matrix& a);

/// Minimum-norm least-squares solution X of A X = B.
Matrix lstsq(const Matrix& a, const Matrix& b);

// Incrementally maintained pseudoinverse of the hidden-output matrix,
// together with the current output weights. beta is owned by the caller's
// update step; pinv always has node_count rows.
struct GrevilleState {
  Matrix pinv;   // node_count x N
  Matrix beta;   // node_count x m
  Index node_count = 0;
};

// Intermediates of one column append. d and b are consumed by
// greville_update_beta and then discarded.
struct GrevilleAppendResult {
  Matrix pinv;  // (node_count + 1) x N
  Vector d;     // length node_count (empty for the first column)
  Vector b;     // length N
};

/// Appends column g to the matrix whose pseudoinverse is state.pinv.
/// H_prev is the matrix before the append (empty for the first column).
/// Handles both Greville branches: independent column (||c|| > delta) and
/// dependent column.
GrevilleAppendResult greville_append(const GrevilleState& state,
                                     const Matrix& h_prev, const Vector& g);

/// New output weights after an append: [beta_prev - d b^T f; b^T f].
Matrix greville_update_beta(const GrevilleState& state, const Vector& d,
                            const Vector& b, const Matrix& f);

}  // namespace innet
