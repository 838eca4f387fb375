#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace monfg {

/// Scalarisation functions mapping a payoff vector to a scalar utility.
class UtilitySpec {
 public:
  /// sum_k w_k p_k with nonnegative weights summing to one.
  struct Linear {
    std::vector<double> weights;
    bool operator==(const Linear&) const = default;
  };
  /// sum_k w_k p_k^e_k with positive integer exponents.
  struct PolySum {
    std::vector<double> weights;
    std::vector<int> exponents;
    bool operator==(const PolySum&) const = default;
  };
  /// prod_k p_k
  struct Product {
    bool operator==(const Product&) const = default;
  };
  /// `reward` when p[objective] >= threshold, otherwise 0.
  struct Threshold {
    std::size_t objective = 0;
    double threshold = 0.0;
    double reward = 0.0;
    bool operator==(const Threshold&) const = default;
  };

  using Variant = std::variant<Linear, PolySum, Product, Threshold>;

  static UtilitySpec linear(std::vector<double> weights, bool nonneg_guard = false);
  static UtilitySpec polysum(std::vector<double> weights, std::vector<int> exponents,
                             bool nonneg_guard = true);
  static UtilitySpec product(bool nonneg_guard = true);
  static UtilitySpec threshold(std::size_t objective, double threshold, double reward,
                               bool nonneg_guard = false);
  /// Linear utility on a single objective: the trade-off game's scalar payoff.
  static UtilitySpec identity() { return linear({1.0}); }

  const Variant& variant() const { return variant_; }
  bool nonneg_guard() const { return nonneg_guard_; }
  bool differentiable() const { return !std::holds_alternative<Threshold>(variant_); }
  bool is_linear() const { return std::holds_alternative<Linear>(variant_); }

  /// Throws DimensionMismatch when `d` is incompatible with this utility.
  void check_dimension(std::size_t d) const;

  bool operator==(const UtilitySpec&) const = default;

 private:
  UtilitySpec(Variant v, bool guard) : variant_(std::move(v)), nonneg_guard_(guard) {}

  Variant variant_;
  bool nonneg_guard_;
};

double utility_eval(const UtilitySpec& u, std::span<const double> p);

/// Analytic gradient. Zero on the region clipped by the nonnegativity guard.
/// Throws NonDifferentiable for Threshold.
std::vector<double> utility_grad(const UtilitySpec& u, std::span<const double> p);

}  // namespace monfg
