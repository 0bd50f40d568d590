#pragma once

// Locality-weighted ridge regression in closed form.
//
// Minimizes  sum_i w_i (y_i - b0 - z_i . beta)^2 + lambda ||beta||^2
// with the intercept b0 unpenalized, by forming the augmented normal
// equations [1 Z]^T W [1 Z] and solving them with a Cholesky factorization.

#include <span>
#include <vector>

#include "limelight/errors.hpp"

namespace limelight {

// Row-major rows x cols matrix without an intercept column.
struct DesignMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DesignMatrix() = default;
  DesignMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return std::span(data).subspan(i * cols, cols); }
  std::span<const double> row(std::size_t i) const {
    return std::span(data).subspan(i * cols, cols);
  }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool operator==(const DesignMatrix&) const = default;
};

struct RidgeSolution {
  double intercept = 0.0;
  // One coefficient per selected column, in the order the columns were given.
  std::vector<double> coefficients;
};

// The normal equations are singular (only possible with lambda == 0).
class RankDeficientError : public DataError {
 public:
  using DataError::DataError;
};

// Fits on the columns listed in `columns`; the second overload uses every
// column. Requires matching row counts, w >= 0 with at least two strictly
// positive weights, and lambda >= 0. Throws RankDeficientError when the
// system is singular.
RidgeSolution fit_weighted_ridge(const DesignMatrix& z, std::span<const double> y,
                                 std::span<const double> w, double lambda,
                                 std::span<const std::size_t> columns);
RidgeSolution fit_weighted_ridge(const DesignMatrix& z, std::span<const double> y,
                                 std::span<const double> w, double lambda);

// Surrogate predictions b0 + z_i . beta over the given columns.
std::vector<double> predict_ridge(const DesignMatrix& z, const RidgeSolution& fit,
                                  std::span<const std::size_t> columns);

// sum_i w_i (y_i - yhat_i)^2
double weighted_residual(std::span<const double> y, std::span<const double> yhat,
                         std::span<const double> w);

// 1 - SS_res / SS_tot around the weighted mean of y. When y is constant
// under the weights, returns 1 for an exact fit and 0 otherwise.
double weighted_r2(std::span<const double> y, std::span<const double> yhat,
                   std::span<const double> w);

}  // namespace limelight
