#pragma once

#include "innet/linalg.hpp"

namespace innet {

/// Root mean square error over all entries: sqrt(sum (p - t)^2 / (N m)).
double rmse(const Matrix& pred, const Matrix& target);

/// Fraction of rows where argmax(pred) == argmax(labels); ties in pred go to
/// the lowest index.
double accuracy(const Matrix& pred, const Matrix& labels);

struct DensityEstimate {
  Vector grid;
  Vector density;
  double bandwidth = 0.0;
};

/// Gaussian-kernel density of the samples with Silverman bandwidth
/// h = 0.9 min(sigma, IQR/1.34) n^(-1/5), evaluated on a uniform grid
/// spanning [min - 4h, max + 4h].
DensityEstimate kde(const Vector& samples, Index grid_points = 256);

}  // namespace innet
