#pragma once

#include <random>

#include "fairslice/core.hpp"

namespace fairslice::testing {

/// Random canonical hungry preference: odd number of interior switches,
/// labels R,L,R,...,L.
inline TwoPiecePreference random_hungry(std::mt19937_64& rng, int max_switches = 7) {
  std::uniform_int_distribution<int> count(0, (max_switches - 1) / 2);
  int switches = 2 * count(rng) + 1;
  std::uniform_real_distribution<double> unif(0.01, 0.99);
  std::vector<double> interior(static_cast<size_t>(switches));
  for (double& v : interior) v = unif(rng);
  std::sort(interior.begin(), interior.end());
  for (size_t k = 0; k + 1 < interior.size(); ++k)
    if (interior[k + 1] - interior[k] < 1e-6) interior[k + 1] = interior[k] + 1e-6;
  std::vector<double> bp{0.0};
  bp.insert(bp.end(), interior.begin(), interior.end());
  bp.push_back(1.0);
  std::vector<Side> labels;
  for (int k = 0; k <= switches; ++k) labels.push_back(k % 2 == 0 ? Side::Right : Side::Left);
  return TwoPiecePreference::make(std::move(bp), std::move(labels));
}

/// Random strictly positive piecewise constant density (valid lazy cost).
inline AdditivePiecewiseConstant random_lazy_cost(std::mt19937_64& rng, int max_blocks = 5) {
  std::uniform_int_distribution<int> count(1, max_blocks);
  int blocks = count(rng);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  std::vector<double> edges{0.0, 1.0};
  for (int k = 1; k < blocks; ++k) edges.push_back(unif(rng));
  std::sort(edges.begin(), edges.end());
  std::uniform_real_distribution<double> dens(0.1, 5.0);
  std::vector<AdditivePiecewiseConstant::Block> out;
  for (size_t k = 0; k + 1 < edges.size(); ++k) {
    if (edges[k + 1] - edges[k] < 1e-9) continue;
    out.push_back({edges[k], edges[k + 1], dens(rng)});
  }
  if (out.empty()) out.push_back({0.0, 1.0, 1.0});
  out.front().start = 0.0;
  out.back().end = 1.0;
  return AdditivePiecewiseConstant::make(std::move(out));
}

/// Uniform density on [lo, hi], zero elsewhere, scaled to total mass.
inline AdditivePiecewiseConstant block_utility(double lo, double hi, double mass) {
  std::vector<AdditivePiecewiseConstant::Block> blocks;
  if (lo > 0.0) blocks.push_back({0.0, lo, 0.0});
  blocks.push_back({lo, hi, mass / (hi - lo)});
  if (hi < 1.0) blocks.push_back({hi, 1.0, 0.0});
  return AdditivePiecewiseConstant::make(std::move(blocks));
}

inline AdditivePiecewiseConstant uniform_utility() { return block_utility(0.0, 1.0, 1.0); }

}  // namespace fairslice::testing
