#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "monfg/error.hpp"
#include "monfg/optim.hpp"

namespace monfg {

void LinearProgram::add_ge(std::vector<double> row, double rhs) {
  ge_rows.push_back(std::move(row));
  ge_rhs.push_back(rhs);
}

void LinearProgram::add_eq(std::vector<double> row, double rhs) {
  eq_rows.push_back(std::move(row));
  eq_rhs.push_back(rhs);
}

void LinearProgram::add_simplex_constraint() { add_eq(std::vector<double>(num_vars(), 1.0), 1.0); }

double max_constraint_violation(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  auto dot = [&](const std::vector<double>& row) {
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += row[j] * x[j];
    return s;
  };
  for (std::size_t r = 0; r < lp.ge_rows.size(); ++r) {
    worst = std::max(worst, lp.ge_rhs[r] - dot(lp.ge_rows[r]));
  }
  for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
    worst = std::max(worst, std::abs(lp.eq_rhs[r] - dot(lp.eq_rows[r])));
  }
  for (double v : x) worst = std::max(worst, -v);
  return worst;
}

namespace {

constexpr double kPivotEps = 1e-11;

// Dense tableau. Row r holds  sum_j t[r][j] x_j = rhs[r]  with basis[r] the
// basic column. The cost row stores reduced costs for a maximization.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, std::vector<double>(cols, 0.0)), rhs_(rows, 0.0), basis_(rows, 0) {}

  std::vector<std::vector<double>> t_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;

  void pivot(std::size_t row, std::size_t col) {
    const double p = t_[row][col];
    for (double& v : t_[row]) v /= p;
    rhs_[row] /= p;
    t_[row][col] = 1.0;
    for (std::size_t r = 0; r < t_.size(); ++r) {
      if (r == row) continue;
      const double factor = t_[r][col];
      if (factor == 0.0) continue;
      for (std::size_t j = 0; j < t_[r].size(); ++j) t_[r][j] -= factor * t_[row][j];
      t_[r][col] = 0.0;
      rhs_[r] -= factor * rhs_[row];
    }
    basis_[row] = col;
  }

  // Maximizes cost·x over the current basis; columns with allowed[j] false
  // never enter. Returns false when unbounded.
  bool optimize(const std::vector<double>& cost, const std::vector<bool>& allowed) {
    const std::size_t ncols = cost.size();
    for (int guard = 0; guard < 100000; ++guard) {
      // Reduced cost c_j - c_B B^-1 A_j; Bland's rule picks the lowest index.
      std::size_t enter = ncols;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (!allowed[j] || is_basic(j)) continue;
        double rc = cost[j];
        for (std::size_t r = 0; r < t_.size(); ++r) rc -= cost[basis_[r]] * t_[r][j];
        if (rc > kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter == ncols) return true;
      std::size_t leave = t_.size();
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < t_.size(); ++r) {
        if (t_[r][enter] <= kPivotEps) continue;
        const double ratio = rhs_[r] / t_[r][enter];
        if (ratio < best_ratio - 1e-14 ||
            (std::abs(ratio - best_ratio) <= 1e-14 && leave < t_.size() &&
             basis_[r] < basis_[leave])) {
          best_ratio = ratio;
          leave = r;
        }
      }
      if (leave == t_.size()) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorKind::OptimizationFailed, "simplex iteration limit reached");
  }

  bool is_basic(std::size_t col) const {
    return std::find(basis_.begin(), basis_.end(), col) != basis_.end();
  }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "LP has no variables");
  if (lp.ge_rows.size() != lp.ge_rhs.size() || lp.eq_rows.size() != lp.eq_rhs.size()) {
    throw Error(ErrorKind::ShapeMismatch, "LP constraint rows and right-hand sides disagree");
  }
  for (const auto& row : lp.ge_rows) {
    if (row.size() != n) throw Error(ErrorKind::ShapeMismatch, "LP row has the wrong width");
  }
  for (const auto& row : lp.eq_rows) {
    if (row.size() != n) throw Error(ErrorKind::ShapeMismatch, "LP row has the wrong width");
  }

  const std::size_t n_ge = lp.ge_rows.size();
  const std::size_t m = n_ge + lp.eq_rows.size();
  // Columns: originals | surplus (one per >= row) | artificials (one per row).
  const std::size_t surplus0 = n;
  const std::size_t art0 = n + n_ge;
  const std::size_t ncols = art0 + m;

  Tableau tab(m, ncols);
  for (std::size_t r = 0; r < m; ++r) {
    const bool is_ge = r < n_ge;
    const auto& row = is_ge ? lp.ge_rows[r] : lp.eq_rows[r - n_ge];
    double rhs = is_ge ? lp.ge_rhs[r] : lp.eq_rhs[r - n_ge];
    const double sign = rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.t_[r][j] = sign * row[j];
    if (is_ge) tab.t_[r][surplus0 + r] = -sign;
    tab.t_[r][art0 + r] = 1.0;
    tab.rhs_[r] = sign * rhs;
    tab.basis_[r] = art0 + r;
  }

  // Phase 1: maximize -sum(artificials).
  std::vector<double> phase1(ncols, 0.0);
  for (std::size_t r = 0; r < m; ++r) phase1[art0 + r] = -1.0;
  std::vector<bool> allowed(ncols, true);
  tab.optimize(phase1, allowed);
  double infeasibility = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis_[r] >= art0) infeasibility += tab.rhs_[r];
  }
  if (infeasibility > 1e-9) {
    throw Error(ErrorKind::Infeasible,
                "constraints cannot be satisfied (residual " + std::to_string(infeasibility) + ")");
  }
  // Drive remaining (zero-level) artificials out of the basis where possible;
  // rows where that fails are redundant and keep a zero artificial.
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis_[r] < art0) continue;
    for (std::size_t j = 0; j < art0; ++j) {
      if (std::abs(tab.t_[r][j]) > 1e-9 && !tab.is_basic(j)) {
        tab.pivot(r, j);
        break;
      }
    }
  }
  for (std::size_t j = art0; j < ncols; ++j) allowed[j] = false;

  // Phase 2.
  std::vector<double> cost(ncols, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  if (!tab.optimize(cost, allowed)) {
    throw Error(ErrorKind::Unbounded, "objective is unbounded on the feasible set");
  }

  LpSolution sol;
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis_[r] < n) sol.x[tab.basis_[r]] = std::max(tab.rhs_[r], 0.0);
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace monfg
