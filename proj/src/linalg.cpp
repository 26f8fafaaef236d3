#include "innet/linalg.hpp"

#include <Eigen/SVD>
#include <Eigen/QR>
#include <algorithm>
#include <limits>

#include "innet/errors.hpp"

namespace innet {

Matrix pinv(const Matrix& a) {
  if (a.size() == 0) {
    throw ContractError("pinv: empty matrix");
  }
  if (!a.allFinite()) {
    throw ContractError("pinv: non-finite entries");
  }
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("pinv: SVD did not converge");
  }
  const Vector& sv = svd.singularValues();
  const double rcond = std::numeric_limits<double>::epsilon() *
                       static_cast<double>(std::max(a.rows(), a.cols()));
  const double cutoff = rcond * (sv.size() > 0 ? sv(0) : 0.0);
  Vector inv_sv = Vector::Zero(sv.size());
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

Matrix lstsq(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) {
    throw ContractError("lstsq: row count mismatch");
  }
  // CompleteOrthogonalDecomposition yields the minimum-norm solution and is
  // considerably cheaper than a full SVD for the tall skinny systems that
  // arise during training.
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  return cod.solve(b);
}

GrevilleAppendResult greville_append(const GrevilleState& state,
                                     const Matrix& h_prev, const Vector& g) {
  const Index n = g.size();
  if (n == 0) {
    throw ContractError("greville_append: empty column");
  }
  const double gnorm2 = g.squaredNorm();
  if (gnorm2 == 0.0) {
    throw DegenerateNodeError("greville_append: zero-norm column");
  }

  GrevilleAppendResult out;
  if (state.node_count == 0) {
    // First column: H^+ = g^T / ||g||^2.
    out.d = Vector();
    out.b = g / gnorm2;
    out.pinv = out.b.transpose();
    return out;
  }

  if (h_prev.cols() != state.node_count || h_prev.rows() != n ||
      state.pinv.cols() != n) {
    throw ContractError("greville_append: state inconsistent with H_prev");
  }

  const Vector d = state.pinv * g;
  const Vector c = g - h_prev * d;
  const double cnorm2 = c.squaredNorm();
  const double delta = 1e-12 * std::sqrt(gnorm2);

  Vector b;
  if (std::sqrt(cnorm2) > delta) {
    b = c / cnorm2;
  } else {
    // Dependent column: b = (1 + d^T d)^-1 (H^+)^T d.
    b = (state.pinv.transpose() * d) / (1.0 + d.squaredNorm());
  }

  out.pinv.resize(state.node_count + 1, n);
  out.pinv.topRows(state.node_count) = state.pinv - d * b.transpose();
  out.pinv.row(state.node_count) = b.transpose();
  out.d = d;
  out.b = b;
  return out;
}

Matrix greville_update_beta(const GrevilleState& state, const Vector& d,
                            const Vector& b, const Matrix& f) {
  if (b.size() != f.rows()) {
    throw ContractError("greville_update_beta: b/f length mismatch");
  }
  if (d.size() != state.node_count) {
    throw ContractError("greville_update_beta: d length mismatch");
  }
  const Eigen::RowVectorXd btf = b.transpose() * f;
  Matrix beta(state.node_count + 1, f.cols());
  if (state.node_count > 0) {
    beta.topRows(state.node_count) = state.beta - d * btf;
  }
  beta.row(state.node_count) = btf;
  return beta;
}

}  // namespace innet
