#include "monfg/utility.hpp"

#include <cmath>
#include <string>

#include "monfg/error.hpp"
#include "monfg/strategy.hpp"

namespace monfg {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double int_pow(double x, int e) {
  double r = 1.0;
  for (int k = 0; k < e; ++k) r *= x;
  return r;
}

bool clipped(const UtilitySpec& u, std::span<const double> p) {
  if (!u.nonneg_guard()) return false;
  for (double v : p) {
    if (v < 0.0) return true;
  }
  return false;
}

void require_length(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorKind::DimensionMismatch, "utility expects " + std::to_string(expected) +
                                                  " objectives, payoff has " + std::to_string(got));
  }
}

}  // namespace

UtilitySpec UtilitySpec::linear(std::vector<double> weights, bool nonneg_guard) {
  if (weights.empty()) throw Error(ErrorKind::InvalidArgument, "linear utility needs weights");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::InvalidArgument, "linear weights must be nonnegative");
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
    throw Error(ErrorKind::InvalidArgument, "linear weights sum to " + std::to_string(sum) + ", not 1");
  }
  return UtilitySpec(Linear{std::move(weights)}, nonneg_guard);
}

UtilitySpec UtilitySpec::polysum(std::vector<double> weights, std::vector<int> exponents,
                                 bool nonneg_guard) {
  if (weights.empty() || weights.size() != exponents.size()) {
    throw Error(ErrorKind::InvalidArgument, "polysum needs equally many weights and exponents");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw Error(ErrorKind::InvalidArgument, "polysum weights must be finite");
  }
  for (int e : exponents) {
    if (e < 1) throw Error(ErrorKind::InvalidArgument, "polysum exponents must be positive integers");
  }
  return UtilitySpec(PolySum{std::move(weights), std::move(exponents)}, nonneg_guard);
}

UtilitySpec UtilitySpec::product(bool nonneg_guard) { return UtilitySpec(Product{}, nonneg_guard); }

UtilitySpec UtilitySpec::threshold(std::size_t objective, double threshold, double reward,
                                   bool nonneg_guard) {
  if (!std::isfinite(threshold) || !std::isfinite(reward)) {
    throw Error(ErrorKind::InvalidArgument, "threshold parameters must be finite");
  }
  return UtilitySpec(Threshold{objective, threshold, reward}, nonneg_guard);
}

void UtilitySpec::check_dimension(std::size_t d) const {
  std::visit(Overloaded{
                 [&](const Linear& l) { require_length(l.weights.size(), d); },
                 [&](const PolySum& s) { require_length(s.weights.size(), d); },
                 [&](const Product&) {
                   if (d == 0) throw Error(ErrorKind::DimensionMismatch, "empty payoff vector");
                 },
                 [&](const Threshold& t) {
                   if (t.objective >= d) {
                     throw Error(ErrorKind::DimensionMismatch,
                                 "threshold objective " + std::to_string(t.objective) +
                                     " out of range for " + std::to_string(d) + " objectives");
                   }
                 },
             },
             variant_);
}

double utility_eval(const UtilitySpec& u, std::span<const double> p) {
  u.check_dimension(p.size());
  if (clipped(u, p)) return 0.0;
  return std::visit(Overloaded{
                        [&](const UtilitySpec::Linear& l) {
                          double s = 0.0;
                          for (std::size_t k = 0; k < p.size(); ++k) s += l.weights[k] * p[k];
                          return s;
                        },
                        [&](const UtilitySpec::PolySum& ps) {
                          double s = 0.0;
                          for (std::size_t k = 0; k < p.size(); ++k) {
                            s += ps.weights[k] * int_pow(p[k], ps.exponents[k]);
                          }
                          return s;
                        },
                        [&](const UtilitySpec::Product&) {
                          double s = 1.0;
                          for (double v : p) s *= v;
                          return s;
                        },
                        [&](const UtilitySpec::Threshold& t) {
                          return p[t.objective] >= t.threshold ? t.reward : 0.0;
                        },
                    },
                    u.variant());
}

std::vector<double> utility_grad(const UtilitySpec& u, std::span<const double> p) {
  if (!u.differentiable()) {
    throw Error(ErrorKind::NonDifferentiable, "threshold utilities have no gradient");
  }
  u.check_dimension(p.size());
  std::vector<double> g(p.size(), 0.0);
  if (clipped(u, p)) return g;
  std::visit(Overloaded{
                 [&](const UtilitySpec::Linear& l) { g = l.weights; },
                 [&](const UtilitySpec::PolySum& ps) {
                   for (std::size_t k = 0; k < p.size(); ++k) {
                     const int e = ps.exponents[k];
                     g[k] = ps.weights[k] * e * int_pow(p[k], e - 1);
                   }
                 },
                 [&](const UtilitySpec::Product&) {
                   for (std::size_t k = 0; k < p.size(); ++k) {
                     double s = 1.0;
                     for (std::size_t j = 0; j < p.size(); ++j) {
                       if (j != k) s *= p[j];
                     }
                     g[k] = s;
                   }
                 },
                 [&](const UtilitySpec::Threshold&) {},
             },
             u.variant());
  return g;
}

}  // namespace monfg
