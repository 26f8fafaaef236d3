#include "innet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "innet/errors.hpp"

namespace innet {

double rmse(const Matrix& pred, const Matrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    throw ContractError("rmse: shape mismatch");
  }
  return std::sqrt((pred - target).squaredNorm() /
                   static_cast<double>(pred.rows() * pred.cols()));
}

double accuracy(const Matrix& pred, const Matrix& labels) {
  if (pred.rows() != labels.rows() || pred.cols() != labels.cols()) {
    throw ContractError("accuracy: shape mismatch");
  }
  if (pred.cols() < 2) {
    throw ContractError("accuracy: needs at least two classes");
  }
  Index correct = 0;
  for (Index i = 0; i < pred.rows(); ++i) {
    Index pi = 0, li = 0;
    for (Index j = 1; j < pred.cols(); ++j) {
      if (pred(i, j) > pred(i, pi)) pi = j;  // strict > keeps lowest on ties
      if (labels(i, j) > labels(i, li)) li = j;
    }
    if (pi == li) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pred.rows());
}

namespace {

// Linear-interpolation quantile of a sorted vector.
double quantile_sorted(const std::vector<double>& v, double q) {
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

DensityEstimate kde(const Vector& samples, Index grid_points) {
  const Index n = samples.size();
  if (n < 2) throw ContractError("kde: needs at least 2 samples");
  if (grid_points < 2) throw ContractError("kde: needs at least 2 grid points");

  std::vector<double> sorted(samples.data(), samples.data() + n);
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back()) {
    throw DegenerateNodeError("kde: all samples identical");
  }

  const double mean = samples.mean();
  const double sigma = std::sqrt((samples.array() - mean).square().sum() /
                                 static_cast<double>(n - 1));
  const double iqr =
      quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  double spread = std::min(sigma, iqr / 1.34);
  if (spread <= 0.0) spread = std::max(sigma, iqr / 1.34);
  const double h =
      0.9 * spread * std::pow(static_cast<double>(n), -0.2);

  DensityEstimate est;
  est.bandwidth = h;
  const double lo = sorted.front() - 4.0 * h;
  const double hi = sorted.back() + 4.0 * h;
  est.grid.resize(grid_points);
  est.density.resize(grid_points);
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  const double norm =
      1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * M_PI));
  for (Index i = 0; i < grid_points; ++i) {
    const double t = lo + step * static_cast<double>(i);
    double acc = 0.0;
    for (Index j = 0; j < n; ++j) {
      const double u = (t - samples(j)) / h;
      acc += std::exp(-0.5 * u * u);
    }
    est.grid(i) = t;
    est.density(i) = norm * acc;
  }
  return est;
}

}  // namespace innet
