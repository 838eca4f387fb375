#include "monfg/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "monfg/error.hpp"

namespace monfg {

void OptConfig::validate() const {
  if (num_starts <= 0 || max_iters <= 0 || !(step_init > 0.0) || !(eps_opt > 0.0)) {
    throw Error(ErrorKind::ConfigInvalid,
                "optimizer settings num_starts, max_iters, step_init and eps_opt must be positive");
  }
}

std::vector<double> project_to_simplex(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cumsum += sorted[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - t > 0.0) theta = t;
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = std::max(x[j] - theta, 0.0);
  return out;
}

std::vector<double> finite_difference_grad(const Objective& f, std::span<const double> p,
                                           double h) {
  std::vector<double> x(p.begin(), p.end());
  std::vector<double> g(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    x[k] = p[k] + h;
    const double up = f(x);
    x[k] = p[k] - h;
    const double down = f(x);
    x[k] = p[k];
    g[k] = (up - down) / (2.0 * h);
  }
  return g;
}

std::size_t simplex_lattice_size(std::size_t k, std::size_t resolution) {
  if (k == 0) return 0;
  // C(resolution + k - 1, k - 1), computed incrementally; every partial
  // product is itself a binomial coefficient so the division is exact.
  std::size_t result = 1;
  for (std::size_t j = 1; j < k; ++j) {
    const std::size_t num = resolution + j;
    if (result > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * num / j;
  }
  return result;
}

std::vector<std::vector<double>> simplex_lattice(std::size_t k, std::size_t resolution) {
  if (k == 0 || resolution == 0) {
    throw Error(ErrorKind::InvalidArgument, "lattice needs k >= 1 and resolution >= 1");
  }
  std::vector<std::vector<double>> points;
  points.reserve(simplex_lattice_size(k, resolution));
  std::vector<std::size_t> counts(k, 0);
  const double r = static_cast<double>(resolution);
  auto emit = [&] {
    std::vector<double> p(k);
    for (std::size_t j = 0; j < k; ++j) p[j] = static_cast<double>(counts[j]) / r;
    points.push_back(std::move(p));
  };
  auto rec = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
    if (pos + 1 == k) {
      counts[pos] = remaining;
      emit();
      return;
    }
    for (std::size_t c = 0; c <= remaining; ++c) {
      counts[pos] = c;
      self(self, pos + 1, remaining - c);
    }
  };
  rec(rec, 0, resolution);
  return points;
}

namespace {

// (value, point) ordering used to merge candidates: higher value first, exact
// ties go to the lexicographically larger point.
bool better(double value, std::span<const double> point, const OptResult& incumbent) {
  if (value != incumbent.value) return value > incumbent.value;
  return std::lexicographical_compare(incumbent.point.begin(), incumbent.point.end(), point.begin(),
                                      point.end());
}

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Blocks {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> offsets;
  std::size_t total = 0;

  explicit Blocks(std::span<const std::size_t> s) : sizes(s.begin(), s.end()) {
    for (std::size_t b : sizes) {
      if (b == 0) throw Error(ErrorKind::InvalidArgument, "empty simplex block");
      offsets.push_back(total);
      total += b;
    }
  }

  void project(std::vector<double>& x) const {
    for (std::size_t b = 0; b < sizes.size(); ++b) {
      auto seg = std::span<double>(x).subspan(offsets[b], sizes[b]);
      auto proj = project_to_simplex(seg);
      std::copy(proj.begin(), proj.end(), seg.begin());
    }
  }
};

void consider(OptResult& best, bool& have_best, double value, const std::vector<double>& x) {
  if (!std::isfinite(value)) return;
  if (!have_best || better(value, x, best)) {
    best.point = x;
    best.value = value;
    have_best = true;
  }
}

// Interior results must beat the incumbent by more than rounding noise, so
// flat faces resolve to the (deterministic) vertex rather than an arbitrary
// interior point with the same value.
void consider_interior(OptResult& best, bool& have_best, double value,
                       const std::vector<double>& x) {
  if (!std::isfinite(value)) return;
  if (have_best && value <= best.value + 1e-12 * (1.0 + std::abs(best.value))) return;
  best.point = x;
  best.value = value;
  have_best = true;
}

void enumerate_vertices(const Objective& f, const Blocks& blocks, OptResult& best,
                        bool& have_best) {
  std::vector<double> x(blocks.total, 0.0);
  auto rec = [&](auto&& self, std::size_t b) -> void {
    if (b == blocks.sizes.size()) {
      consider(best, have_best, f(x), x);
      return;
    }
    for (std::size_t a = 0; a < blocks.sizes[b]; ++a) {
      x[blocks.offsets[b] + a] = 1.0;
      self(self, b + 1);
      x[blocks.offsets[b] + a] = 0.0;
    }
  };
  rec(rec, 0);
}

void lattice_pass(const Objective& f, const Blocks& blocks, OptResult& best, bool& have_best) {
  constexpr std::size_t kMaxPoints = 200000;
  std::size_t resolution = 50;
  auto total_points = [&](std::size_t r) {
    long double t = 1.0L;
    for (std::size_t b : blocks.sizes) t *= static_cast<long double>(simplex_lattice_size(b, r));
    return t;
  };
  while (resolution > 1 && total_points(resolution) > kMaxPoints) --resolution;

  std::vector<std::vector<std::vector<double>>> lattices;
  for (std::size_t b : blocks.sizes) lattices.push_back(simplex_lattice(b, resolution));
  std::vector<double> x(blocks.total, 0.0);
  auto rec = [&](auto&& self, std::size_t b) -> void {
    if (b == blocks.sizes.size()) {
      consider_interior(best, have_best, f(x), x);
      return;
    }
    for (const auto& p : lattices[b]) {
      std::copy(p.begin(), p.end(), x.begin() + static_cast<std::ptrdiff_t>(blocks.offsets[b]));
      self(self, b + 1);
    }
  };
  rec(rec, 0);
}

// Projected gradient ascent with step halving. Returns the best iterate.
OptResult ascend(const Objective& f, const Gradient& grad, const Blocks& blocks,
                 std::vector<double> x, const OptConfig& cfg) {
  constexpr int kMaxHalvings = 40;
  double fx = f(x);
  std::vector<double> g(x.size());
  std::vector<double> trial(x.size());
  double step = cfg.step_init;
  for (int it = 0; it < cfg.max_iters; ++it) {
    grad(x, g);
    bool accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h) {
      for (std::size_t j = 0; j < x.size(); ++j) trial[j] = x[j] + step * g[j];
      blocks.project(trial);
      double moved = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) moved = std::max(moved, std::abs(trial[j] - x[j]));
      if (moved == 0.0) break;  // stationary under projection
      const double ft = f(trial);
      if (ft > fx) {
        const double gain = ft - fx;
        x.swap(trial);
        fx = ft;
        accepted = true;
        if (gain < cfg.eps_opt) return {std::move(x), fx};
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    step = std::min(step * 2.0, cfg.step_init * 1e6);
  }
  return {std::move(x), fx};
}

}  // namespace

OptResult maximize_over_simplices(const Objective& f, const Gradient& grad,
                                  std::span<const std::size_t> block_sizes, const OptConfig& cfg,
                                  std::size_t vertex_limit) {
  cfg.validate();
  const Blocks blocks(block_sizes);
  if (blocks.sizes.empty()) throw Error(ErrorKind::InvalidArgument, "no simplex blocks");

  OptResult best;
  bool have_best = false;

  long double num_vertices = 1.0L;
  for (std::size_t b : blocks.sizes) num_vertices *= static_cast<long double>(b);
  if (num_vertices <= static_cast<long double>(vertex_limit)) {
    enumerate_vertices(f, blocks, best, have_best);
  }

  if (!grad) {
    lattice_pass(f, blocks, best, have_best);
  } else {
    std::mt19937_64 rng(cfg.seed);
    std::vector<double> start(blocks.total);
    for (int s = 0; s < cfg.num_starts; ++s) {
      for (std::size_t b = 0; b < blocks.sizes.size(); ++b) {
        double sum = 0.0;
        for (std::size_t a = 0; a < blocks.sizes[b]; ++a) {
          const double e = -std::log1p(-unit_uniform(rng));
          start[blocks.offsets[b] + a] = e;
          sum += e;
        }
        for (std::size_t a = 0; a < blocks.sizes[b]; ++a) start[blocks.offsets[b] + a] /= sum;
      }
      auto local = ascend(f, grad, blocks, start, cfg);
      consider_interior(best, have_best, local.value, local.point);
    }
  }

  if (!have_best) {
    throw Error(ErrorKind::OptimizationFailed, "no start produced a finite objective value");
  }
  return best;
}

OptResult maximize_over_simplex(const Objective& f, const Gradient& grad, std::size_t k,
                                const OptConfig& cfg) {
  const std::size_t blocks[] = {k};
  return maximize_over_simplices(f, grad, blocks, cfg, std::numeric_limits<std::size_t>::max());
}

}  // namespace monfg
