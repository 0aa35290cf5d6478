#pragma once

#include <cstddef>
#include <vector>

namespace declab {

/// Dense row-major matrix, just large enough for the LP instances here.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct LpResult {
  double value = 0.0;
  std::vector<double> x;
  long iterations = 0;
};

/// Minimizes c.x subject to A x = b, x >= 0, with a two-phase dense primal
/// simplex using Bland's anti-cycling rule. Pivot tolerance 1e-9, iteration
/// cap 1e6. Redundant equality rows are detected in phase one and dropped.
/// Throws LpInfeasibleError / NumericFailureError.
LpResult solve_equality_lp(const DenseMatrix& a, const std::vector<double>& b,
                           const std::vector<double>& c);

/// Removes linearly dependent rows from [A | b] by Gaussian elimination with
/// partial pivoting. Returns indices of the retained rows.
std::vector<int> independent_rows(const DenseMatrix& a, const std::vector<double>& b,
                                  double tol = 1e-11);

}  // namespace declab
