#include "declab/simplex_lp.hpp"

#include <algorithm>
#include <cmath>

#include "declab/errors.hpp"

namespace declab {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr long kIterationCap = 1000000;

// Working tableau: one row per constraint plus a reduced-cost row at the
// bottom; columns are structural variables, then artificials, then the rhs.
struct Tableau {
  DenseMatrix t;
  std::vector<int> basis;
  int n_struct;
  int n_total;

  int rows() const { return static_cast<int>(basis.size()); }
  double& rhs(int r) { return t.at(r, n_total); }
  double rhs(int r) const { return t.at(r, n_total); }
};

void pivot(Tableau& tab, int row, int col) {
  const int cols = tab.n_total + 1;
  const double piv = tab.t.at(row, col);
  for (int j = 0; j <= tab.n_total; ++j) tab.t.at(row, j) /= piv;
  for (int i = 0; i <= tab.rows(); ++i) {
    if (i == row) continue;
    const double factor = tab.t.at(i, col);
    if (factor == 0.0) continue;
    for (int j = 0; j < cols; ++j) {
      tab.t.at(i, j) -= factor * tab.t.at(row, j);
    }
    tab.t.at(i, col) = 0.0;
  }
  if (row < tab.rows()) tab.basis[row] = col;
}

// Runs Bland-rule iterations on the current cost row until optimal.
// `allow_col` bounds the candidate entering columns.
long run_simplex(Tableau& tab, int allow_col, long iterations_used) {
  const int cost_row = tab.rows();
  long iters = iterations_used;
  while (true) {
    if (++iters > kIterationCap) {
      throw NumericFailureError("simplex exceeded iteration cap");
    }
    // Bland: entering variable is the lowest-index column with a negative
    // reduced cost.
    int enter = -1;
    for (int j = 0; j < allow_col; ++j) {
      if (tab.t.at(cost_row, j) < -kPivotTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return iters;  // optimal

    // Ratio test; ties broken toward the smallest basis index (Bland).
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < tab.rows(); ++i) {
      const double a = tab.t.at(i, enter);
      if (a > kPivotTol) {
        const double ratio = tab.rhs(i) / a;
        if (leave < 0 || ratio < best_ratio - kPivotTol ||
            (std::abs(ratio - best_ratio) <= kPivotTol && tab.basis[i] < tab.basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) {
      throw NumericFailureError("LP is unbounded below");
    }
    pivot(tab, leave, enter);
  }
}

void set_cost_row(Tableau& tab, const std::vector<double>& cost) {
  const int cost_row = tab.rows();
  for (int j = 0; j <= tab.n_total; ++j) tab.t.at(cost_row, j) = 0.0;
  for (int j = 0; j < static_cast<int>(cost.size()); ++j) {
    tab.t.at(cost_row, j) = cost[j];
  }
  // Subtract basic rows to express reduced costs for the current basis.
  for (int i = 0; i < tab.rows(); ++i) {
    const int bj = tab.basis[i];
    const double cb = bj < static_cast<int>(cost.size()) ? cost[bj] : 0.0;
    if (cb == 0.0) continue;
    for (int j = 0; j <= tab.n_total; ++j) {
      tab.t.at(cost_row, j) -= cb * tab.t.at(i, j);
    }
  }
}

void drop_row(Tableau& tab, int row) {
  const int last = tab.rows() - 1;
  const int cols = tab.n_total + 1;
  // Move the cost row up over the removed constraint row.
  for (int i = row; i <= last; ++i) {
    for (int j = 0; j < cols; ++j) tab.t.at(i, j) = tab.t.at(i + 1, j);
  }
  tab.basis.erase(tab.basis.begin() + row);
}

}  // namespace

LpResult solve_equality_lp(const DenseMatrix& a, const std::vector<double>& b,
                           const std::vector<double>& c) {
  const int m = a.rows();
  const int n = a.cols();
  if (static_cast<int>(b.size()) != m || static_cast<int>(c.size()) != n) {
    throw InvalidParamsError("LP dimension mismatch");
  }

  Tableau tab;
  tab.n_struct = n;
  tab.n_total = n + m;
  tab.t = DenseMatrix(m + 1, tab.n_total + 1);
  tab.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    const double sign = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) tab.t.at(i, j) = sign * a.at(i, j);
    tab.t.at(i, n + i) = 1.0;
    tab.rhs(i) = sign * b[i];
    tab.basis[i] = n + i;
  }

  // Phase one: minimize the sum of artificials.
  std::vector<double> phase1_cost(tab.n_total, 0.0);
  for (int j = n; j < tab.n_total; ++j) phase1_cost[j] = 1.0;
  set_cost_row(tab, phase1_cost);
  long iters = run_simplex(tab, tab.n_total, 0);

  const int cost_row_idx = tab.rows();
  const double infeasibility = -tab.t.at(cost_row_idx, tab.n_total);
  if (infeasibility > 1e-7) {
    throw LpInfeasibleError("phase-one optimum is positive");
  }

  // Drive artificials out of the basis; rows where no structural pivot
  // exists are redundant and dropped.
  for (int i = tab.rows() - 1; i >= 0; --i) {
    if (tab.basis[i] < n) continue;
    int piv_col = -1;
    for (int j = 0; j < n; ++j) {
      if (std::abs(tab.t.at(i, j)) > kPivotTol) {
        piv_col = j;
        break;
      }
    }
    if (piv_col >= 0) {
      pivot(tab, i, piv_col);
    } else {
      drop_row(tab, i);
    }
  }

  // Phase two on the structural columns only.
  set_cost_row(tab, c);
  iters = run_simplex(tab, n, iters);

  LpResult result;
  result.iterations = iters;
  result.x.assign(n, 0.0);
  for (int i = 0; i < tab.rows(); ++i) {
    if (tab.basis[i] < n) result.x[tab.basis[i]] = tab.rhs(i);
  }
  result.value = 0.0;
  for (int j = 0; j < n; ++j) result.value += c[j] * result.x[j];
  return result;
}

std::vector<int> independent_rows(const DenseMatrix& a, const std::vector<double>& b,
                                  double tol) {
  const int m = a.rows();
  const int n = a.cols();
  DenseMatrix work(m, n + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) work.at(i, j) = a.at(i, j);
    work.at(i, n) = b[i];
  }
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;

  std::vector<int> kept;
  int rank_row = 0;
  for (int col = 0; col <= n && rank_row < m; ++col) {
    int piv = -1;
    double best = tol;
    for (int i = rank_row; i < m; ++i) {
      if (std::abs(work.at(i, col)) > best) {
        best = std::abs(work.at(i, col));
        piv = i;
      }
    }
    if (piv < 0) continue;
    for (int j = 0; j <= n; ++j) std::swap(work.at(piv, j), work.at(rank_row, j));
    std::swap(order[piv], order[rank_row]);
    kept.push_back(order[rank_row]);
    for (int i = rank_row + 1; i < m; ++i) {
      const double factor = work.at(i, col) / work.at(rank_row, col);
      if (factor == 0.0) continue;
      for (int j = col; j <= n; ++j) work.at(i, j) -= factor * work.at(rank_row, j);
    }
    ++rank_row;
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace declab
