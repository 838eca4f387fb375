#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace monfg {

struct OptConfig {
  int num_starts = 16;
  int max_iters = 500;
  double step_init = 0.1;
  /// Convergence threshold on per-iteration improvement.
  double eps_opt = 1e-7;
  std::uint64_t seed = 0;

  /// Throws ConfigInvalid unless every numeric field is positive.
  void validate() const;

  bool operator==(const OptConfig&) const = default;
};

using Objective = std::function<double(std::span<const double>)>;
/// Writes the gradient at x into `out` (same length as x).
using Gradient = std::function<void(std::span<const double> x, std::span<double> out)>;

struct OptResult {
  std::vector<double> point;
  double value = 0.0;
};

/// Maximizes f over the probability simplex of dimension k. All k vertices
/// are evaluated, then cfg.num_starts projected-gradient ascents run from
/// seeded random interior points. Without a gradient (non-differentiable f)
/// the ascents are replaced by a lattice pass at step 1/50. Identical
/// cfg.seed gives bit-identical results.
OptResult maximize_over_simplex(const Objective& f, const Gradient& grad, std::size_t k,
                                const OptConfig& cfg);

/// Same contract over a product of simplices: x is the concatenation of one
/// distribution per block. Joint vertices are enumerated only when there are
/// at most `vertex_limit` of them.
OptResult maximize_over_simplices(const Objective& f, const Gradient& grad,
                                  std::span<const std::size_t> block_sizes, const OptConfig& cfg,
                                  std::size_t vertex_limit);

/// Points {c/resolution : c nonnegative integers summing to resolution} on the
/// k-simplex, in ascending lexicographic order of c.
std::vector<std::vector<double>> simplex_lattice(std::size_t k, std::size_t resolution);
/// Number of lattice points, C(resolution + k - 1, k - 1); saturates at SIZE_MAX.
std::size_t simplex_lattice_size(std::size_t k, std::size_t resolution);

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::span<const double> x);

/// Central differences, one coordinate at a time.
std::vector<double> finite_difference_grad(const Objective& f, std::span<const double> p,
                                           double h);

/// maximize objective·x  s.t.  ge_rows·x >= ge_rhs,  eq_rows·x == eq_rhs,  x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> ge_rows;
  std::vector<double> ge_rhs;
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;

  std::size_t num_vars() const { return objective.size(); }
  void add_ge(std::vector<double> row, double rhs);
  void add_eq(std::vector<double> row, double rhs);
  /// Adds sum(x) == 1.
  void add_simplex_constraint();
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Throws Infeasible or Unbounded.
LpSolution solve_lp(const LinearProgram& lp);

/// Largest violation of any constraint (including x >= 0) at x.
double max_constraint_violation(const LinearProgram& lp, std::span<const double> x);

}  // namespace monfg
