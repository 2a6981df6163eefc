#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <iterator>
#include <span>
#include <stdexcept>
#include <vector>

#include "social/graph.hpp"

namespace social {

/// `count` distinct nodes drawn uniformly without replacement, in ascending
/// id order. Deterministic for a given rng_seed.
inline std::vector<NodeId> sample_seeds(const Graph& g, std::size_t count, std::uint64_t rng_seed) {
  if (count > g.node_count()) throw std::invalid_argument("more seeds requested than nodes");
  std::vector<NodeId> out;
  out.reserve(count);
  std::mt19937_64 rng(rng_seed);
  std::vector<NodeId> ids(g.node_count());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::ranges::sample(ids, std::back_inserter(out), static_cast<std::ptrdiff_t>(count), rng);
  return out;
}

inline double arithmetic_mean(std::span<const double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

/// Requires strictly positive values.
inline double geometric_mean(std::span<const double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  double log_sum = 0;
  for (double x : xs) {
    if (!(x > 0)) throw std::domain_error("geometric mean needs positive values");
    log_sum += std::log(x);
  }
  return std::exp(log_sum / static_cast<double>(xs.size()));
}

/// One curve of a performance profile: for each tau, the fraction of
/// instances on which the algorithm is within a factor tau of the best.
struct ProfileCurve {
  std::vector<double> taus;
  std::vector<double> fractions;
};

/// Builds performance-profile curves for several algorithms measured on the
/// same instances (values[a][i] = metric of algorithm a on instance i, lower
/// is better). A zero best makes any positive value infinitely worse.
inline std::vector<ProfileCurve> performance_profile(const std::vector<std::vector<double>>& values,
                                                     std::span<const double> taus) {
  if (values.empty()) return {};
  const std::size_t instances = values.front().size();
  for (const auto& v : values) {
    if (v.size() != instances) throw std::invalid_argument("algorithms cover different instance counts");
  }
  std::vector<std::vector<double>> ratios(values.size(), std::vector<double>(instances));
  for (std::size_t i = 0; i < instances; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& v : values) best = std::min(best, v[i]);
    for (std::size_t a = 0; a < values.size(); ++a) {
      const double x = values[a][i];
      if (x == best) {
        ratios[a][i] = 1.0;
      } else if (best <= 0) {
        ratios[a][i] = std::numeric_limits<double>::infinity();
      } else {
        ratios[a][i] = x / best;
      }
    }
  }
  std::vector<ProfileCurve> curves(values.size());
  for (std::size_t a = 0; a < values.size(); ++a) {
    curves[a].taus.assign(taus.begin(), taus.end());
    for (double tau : taus) {
      const auto within = std::count_if(ratios[a].begin(), ratios[a].end(), [&](double r) { return r <= tau; });
      curves[a].fractions.push_back(instances == 0 ? 0.0
                                                   : static_cast<double>(within) / static_cast<double>(instances));
    }
  }
  return curves;
}

}  // namespace social
