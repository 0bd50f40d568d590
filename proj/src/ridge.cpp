#include "limelight/ridge.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "limelight/kernels.hpp"

namespace limelight {
namespace {

void check_inputs(const DesignMatrix& z, std::span<const double> y, std::span<const double> w,
                  double lambda) {
  if (y.size() != z.rows || w.size() != z.rows) {
    throw DataError("surrogate", "design matrix, targets and weights differ in length");
  }
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DataError("surrogate", "ridge lambda must be >= 0");
  }
  std::size_t positive = 0;
  for (double v : w) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DataError("surrogate", "sample weights must be finite and >= 0");
    }
    if (v > 0.0) ++positive;
  }
  if (positive < 2) throw DataError("surrogate", "at least two samples need positive weight");
}

// In-place Cholesky solve of the symmetric positive definite system a x = b
// (a is n x n row-major). Returns false when a pivot collapses.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  std::vector<double> diag(n);
  for (std::size_t j = 0; j < n; ++j) diag[j] = a[j * n + j];
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) pivot -= a[j * n + k] * a[j * n + k];
    // Relative test: a pivot that loses all but ~1e-10 of its diagonal entry
    // signals (numerical) linear dependence.
    if (!(pivot > 1e-10 * std::max(diag[j], 1e-300))) return false;
    const double l = std::sqrt(pivot);
    a[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / l;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= a[i * n + k] * b[k];
    b[i] = v / a[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = b[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a[k * n + i] * b[k];
    b[i] = v / a[i * n + i];
  }
  return true;
}

std::vector<std::size_t> all_columns(std::size_t n) {
  std::vector<std::size_t> cols(n);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return cols;
}

}  // namespace

RidgeSolution fit_weighted_ridge(const DesignMatrix& z, std::span<const double> y,
                                 std::span<const double> w, double lambda,
                                 std::span<const std::size_t> columns) {
  check_inputs(z, y, w, lambda);
  for (std::size_t c : columns) {
    if (c >= z.cols) throw DataError("surrogate", "column index out of range");
  }
  const std::size_t p = columns.size() + 1;
  std::vector<double> gram(p * p, 0.0);
  std::vector<double> rhs(p, 0.0);
  std::vector<double> x(p);
  x[0] = 1.0;
  for (std::size_t i = 0; i < z.rows; ++i) {
    if (w[i] == 0.0) continue;
    const auto zi = z.row(i);
    for (std::size_t j = 0; j < columns.size(); ++j) x[j + 1] = zi[columns[j]];
    // gram += w_i x x^T, one row per axpy.
    for (std::size_t j = 0; j < p; ++j) {
      const double s = w[i] * x[j];
      if (s != 0.0) kernels::axpy(s, x, std::span(gram).subspan(j * p, p));
    }
    kernels::axpy(w[i] * y[i], x, rhs);
  }
  for (std::size_t j = 1; j < p; ++j) gram[j * p + j] += lambda;

  if (!cholesky_solve(gram, rhs, p)) {
    throw RankDeficientError(
        "surrogate",
        "weighted least-squares system is rank deficient; some features never vary "
        "independently in the sample. Use a ridge lambda > 0 or more samples");
  }
  RidgeSolution sol;
  sol.intercept = rhs[0];
  sol.coefficients.assign(rhs.begin() + 1, rhs.end());
  return sol;
}

RidgeSolution fit_weighted_ridge(const DesignMatrix& z, std::span<const double> y,
                                 std::span<const double> w, double lambda) {
  const auto cols = all_columns(z.cols);
  return fit_weighted_ridge(z, y, w, lambda, cols);
}

std::vector<double> predict_ridge(const DesignMatrix& z, const RidgeSolution& fit,
                                  std::span<const std::size_t> columns) {
  std::vector<double> yhat(z.rows, fit.intercept);
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const double beta = fit.coefficients[j];
    for (std::size_t i = 0; i < z.rows; ++i) yhat[i] += beta * z(i, columns[j]);
  }
  return yhat;
}

double weighted_residual(std::span<const double> y, std::span<const double> yhat,
                         std::span<const double> w) {
  return kernels::weighted_sq_diff(w, y, yhat);
}

double weighted_r2(std::span<const double> y, std::span<const double> yhat,
                   std::span<const double> w) {
  const double total_w = std::accumulate(w.begin(), w.end(), 0.0);
  const double mean = total_w > 0.0 ? kernels::dot(w, y) / total_w : 0.0;
  const std::vector<double> mean_vec(y.size(), mean);
  const double ss_tot = kernels::weighted_sq_diff(w, y, mean_vec);
  const double ss_res = kernels::weighted_sq_diff(w, y, yhat);
  const double scale = std::max(1.0, total_w);
  if (ss_tot <= 1e-24 * scale) return ss_res <= 1e-20 * scale ? 1.0 : 0.0;
  return 1.0 - ss_res / ss_tot;
}

}  // namespace limelight
