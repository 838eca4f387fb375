#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "doctest.h"
#include "monfg/error.hpp"
#include "monfg/game.hpp"
#include "monfg/strategy.hpp"

// Asserts that `expr` throws monfg::Error of the given kind.
#define CHECK_THROWS_KIND(expr, expected_kind)                                    \
  do {                                                                            \
    bool thrown_ = false;                                                         \
    try {                                                                         \
      (void)(expr);                                                               \
    } catch (const monfg::Error& e_) {                                            \
      thrown_ = true;                                                             \
      CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());                     \
    }                                                                             \
    CHECK_MESSAGE(thrown_, "expected monfg::Error from " #expr);                  \
  } while (false)

namespace testing {

inline void check_vec(std::span<const double> got, std::vector<double> want, double tol = 1e-12) {
  REQUIRE(got.size() == want.size());
  for (std::size_t j = 0; j < want.size(); ++j) {
    CHECK_MESSAGE(std::abs(got[j] - want[j]) <= tol,
                  "component " << j << ": got " << got[j] << ", want " << want[j]);
  }
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random point on the k-simplex, with a chance of exact zeros.
inline std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t k,
                                               bool allow_zeros = true) {
  std::vector<double> x(k);
  double sum = 0.0;
  for (auto& v : x) {
    v = -std::log(1.0 - uniform(rng, 0.0, 1.0));
    if (allow_zeros && uniform(rng, 0.0, 1.0) < 0.2) v = 0.0;
    sum += v;
  }
  if (sum == 0.0) {
    x[0] = 1.0;
    return x;
  }
  for (auto& v : x) v /= sum;
  // Push rounding drift into the largest entry.
  double total = 0.0;
  std::size_t big = 0;
  for (std::size_t j = 0; j < k; ++j) {
    total += x[j];
    if (x[j] > x[big]) big = j;
  }
  x[big] += 1.0 - total;
  return x;
}

inline monfg::Game random_game(std::mt19937_64& rng, std::vector<std::size_t> counts, std::size_t d,
                               double lo, double hi) {
  std::size_t cells = 1;
  for (auto c : counts) cells *= c;
  std::vector<double> flat(cells * counts.size() * d);
  for (auto& v : flat) v = uniform(rng, lo, hi);
  return monfg::Game::from_counts(d, std::move(counts), std::move(flat));
}

inline monfg::StrategyProfile random_profile(std::mt19937_64& rng, const monfg::Game& g) {
  std::vector<monfg::MixedStrategy> s;
  for (std::size_t i = 0; i < g.num_players(); ++i) {
    s.emplace_back(random_distribution(rng, g.num_actions(i)));
  }
  return monfg::StrategyProfile(std::move(s));
}

// Visits every joint action as an explicit action vector, first player slowest.
template <class Fn>
void for_each_joint(const std::vector<std::size_t>& counts, Fn fn) {
  std::vector<std::size_t> a(counts.size(), 0);
  while (true) {
    fn(a);
    std::size_t p = counts.size();
    while (p > 0) {
      --p;
      if (++a[p] < counts[p]) break;
      a[p] = 0;
      if (p == 0) return;
    }
  }
}

}  // namespace testing
