#include "fairslice/mixed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fairslice {

double PieceCollection::utility(const AdditivePiecewiseConstant& u, int s) const {
  double sum = 0.0;
  double lo = 0.0;
  for (size_t k = 0; k <= cuts.size(); ++k) {
    double hi = k < cuts.size() ? cuts[k] : 1.0;
    if (side[k] == s) sum += u.integral(lo, hi);
    lo = hi;
  }
  return sum;
}

std::vector<AdditivePiecewiseConstant> gen_counterexample(int n) {
  if (n < 4) throw std::invalid_argument("counterexample family needs n >= 4");
  std::vector<AdditivePiecewiseConstant> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    // Total utility +1 for odd i, -1 for even i, uniform on the i-th
    // n-th of the cake.
    double sign = (i % 2 == 1) ? 1.0 : -1.0;
    std::vector<AdditivePiecewiseConstant::Block> blocks;
    double lo = static_cast<double>(i - 1) / n;
    double hi = static_cast<double>(i) / n;
    if (lo > 0.0) blocks.push_back({0.0, lo, 0.0});
    blocks.push_back({lo, hi, sign * n});
    if (hi < 1.0) blocks.push_back({hi, 1.0, 0.0});
    out.push_back(AdditivePiecewiseConstant::make(std::move(blocks)));
  }
  return out;
}

CollectionEfReport verify_collection_ef(const PieceCollection& c,
                                        const std::vector<AdditivePiecewiseConstant>& utils,
                                        int k1, int k2, double tie_eps) {
  int n = static_cast<int>(utils.size());
  if (k1 + k2 != n) throw std::invalid_argument("group sizes must sum to the player count");
  CollectionEfReport r;
  r.utilities.resize(static_cast<size_t>(n));
  int strict0 = 0, strict1 = 0;
  std::vector<int> pref(static_cast<size_t>(n));  // 0, 1, or 2 for tie
  for (int i = 0; i < n; ++i) {
    double u0 = c.utility(utils[static_cast<size_t>(i)], 0);
    double u1 = c.utility(utils[static_cast<size_t>(i)], 1);
    r.utilities[static_cast<size_t>(i)] = {u0, u1};
    if (u0 > u1 + tie_eps) {
      pref[static_cast<size_t>(i)] = 0;
      ++strict0;
    } else if (u1 > u0 + tie_eps) {
      pref[static_cast<size_t>(i)] = 1;
      ++strict1;
    } else {
      pref[static_cast<size_t>(i)] = 2;
    }
  }
  if (strict0 <= k1 && strict1 <= k2) {
    r.envy_free = true;
    r.group_of.assign(static_cast<size_t>(n), -1);
    int room0 = k1;
    for (int i = 0; i < n; ++i)
      if (pref[static_cast<size_t>(i)] == 0) {
        r.group_of[static_cast<size_t>(i)] = 0;
        --room0;
      }
    for (int i = 0; i < n && room0 > 0; ++i)
      if (pref[static_cast<size_t>(i)] == 2) {
        r.group_of[static_cast<size_t>(i)] = 0;
        --room0;
      }
    for (int i = 0; i < n; ++i)
      if (r.group_of[static_cast<size_t>(i)] < 0) r.group_of[static_cast<size_t>(i)] = 1;
  }
  return r;
}

namespace {

// Drops zero-length intervals and merges same-side neighbours so the
// reported cut count is the real one.
PieceCollection canonicalize(const PieceCollection& c) {
  PieceCollection out;
  double lo = 0.0;
  std::vector<std::pair<double, int>> segs;  // (hi, side)
  for (size_t k = 0; k <= c.cuts.size(); ++k) {
    double hi = k < c.cuts.size() ? c.cuts[k] : 1.0;
    if (hi > lo) {
      if (!segs.empty() && segs.back().second == c.side[k])
        segs.back().first = hi;
      else
        segs.emplace_back(hi, c.side[k]);
    }
    lo = hi;
  }
  for (size_t k = 0; k < segs.size(); ++k) {
    if (k + 1 < segs.size()) out.cuts.push_back(segs[k].first);
    out.side.push_back(segs[k].second);
  }
  return out;
}

}  // namespace

MinCutResult min_cut_search(const std::vector<AdditivePiecewiseConstant>& utils, int k1, int k2,
                            int max_cuts, int grid_resolution, double tie_eps) {
  int n = static_cast<int>(utils.size());
  int G = grid_resolution;
  if (G < 2) throw std::invalid_argument("grid resolution too small");
  // Prefix utilities at the grid points.
  std::vector<std::vector<double>> prefix(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(G + 1), 0.0));
  for (int i = 0; i < n; ++i)
    for (int g = 1; g <= G; ++g)
      prefix[static_cast<size_t>(i)][static_cast<size_t>(g)] =
          utils[static_cast<size_t>(i)].integral(0.0, static_cast<double>(g) / G);

  MinCutResult res;
  std::vector<std::vector<double>> w(static_cast<size_t>(n));

  for (int c = 0; c <= max_cuts; ++c) {
    std::vector<int> pos(static_cast<size_t>(c));
    std::iota(pos.begin(), pos.end(), 1);
    bool more = true;
    while (more) {
      // Interval utilities for this placement.
      for (int i = 0; i < n; ++i) {
        auto& wi = w[static_cast<size_t>(i)];
        wi.assign(static_cast<size_t>(c + 1), 0.0);
        int lo = 0;
        for (int k = 0; k <= c; ++k) {
          int hi = k < c ? pos[static_cast<size_t>(k)] : G;
          wi[static_cast<size_t>(k)] = prefix[static_cast<size_t>(i)][static_cast<size_t>(hi)] -
                                       prefix[static_cast<size_t>(i)][static_cast<size_t>(lo)];
          lo = hi;
        }
      }
      for (int start = 0; start <= 1; ++start) {
        ++res.configurations_checked;
        int strict0 = 0, strict1 = 0;
        for (int i = 0; i < n; ++i) {
          double u0 = 0.0, u1 = 0.0;
          for (int k = 0; k <= c; ++k)
            (((k + start) % 2 == 0) ? u0 : u1) += w[static_cast<size_t>(i)][static_cast<size_t>(k)];
          if (u0 > u1 + tie_eps)
            ++strict0;
          else if (u1 > u0 + tie_eps)
            ++strict1;
        }
        if (strict0 <= k1 && strict1 <= k2) {
          PieceCollection found;
          for (int k = 0; k < c; ++k)
            found.cuts.push_back(static_cast<double>(pos[static_cast<size_t>(k)]) / G);
          for (int k = 0; k <= c; ++k) found.side.push_back((k + start) % 2);
          CollectionEfReport rep = verify_collection_ef(found, utils, k1, k2, tie_eps);
          res.collection = found;
          res.group_of = rep.group_of;
          return res;
        }
      }
      // Next combination of cut positions (values 1..G-1, increasing).
      if (c == 0) break;
      int j = c - 1;
      while (j >= 0 && pos[static_cast<size_t>(j)] == G - 1 - (c - 1 - j)) --j;
      if (j < 0) {
        more = false;
      } else {
        ++pos[static_cast<size_t>(j)];
        for (int t = j + 1; t < c; ++t)
          pos[static_cast<size_t>(t)] = pos[static_cast<size_t>(t - 1)] + 1;
      }
    }
  }
  return res;
}

namespace {

double halving_objective(const std::vector<std::vector<double>>& prefix,
                         const std::vector<int>& cuts_sorted, int G) {
  double worst = 0.0;
  for (const auto& p : prefix) {
    double u0 = 0.0, u1 = 0.0;
    int lo = 0;
    for (size_t k = 0; k <= cuts_sorted.size(); ++k) {
      int hi = k < cuts_sorted.size() ? cuts_sorted[k] : G;
      double v = p[static_cast<size_t>(hi)] - p[static_cast<size_t>(lo)];
      ((k % 2 == 0) ? u0 : u1) += v;
      lo = hi;
    }
    worst = std::max(worst, std::abs(u0 - u1));
  }
  return worst;
}

}  // namespace

std::optional<PieceCollection> consensus_halving_grid(
    const std::vector<AdditivePiecewiseConstant>& utils, int n_cuts, double eps,
    int grid_resolution) {
  int n = static_cast<int>(utils.size());
  int G = grid_resolution;
  if (n_cuts < 1 || G < 2) throw std::invalid_argument("need at least one cut and a real grid");
  std::vector<std::vector<double>> prefix(static_cast<size_t>(n),
                                          std::vector<double>(static_cast<size_t>(G + 1), 0.0));
  for (int i = 0; i < n; ++i)
    for (int g = 1; g <= G; ++g)
      prefix[static_cast<size_t>(i)][static_cast<size_t>(g)] =
          utils[static_cast<size_t>(i)].integral(0.0, static_cast<double>(g) / G);

  // Starting placements: equally spaced cuts, and the midpoints of the
  // players' nonzero-density blocks (the natural switch positions for
  // block-supported utilities).
  std::vector<std::vector<int>> starts;
  {
    std::vector<int> even(static_cast<size_t>(n_cuts));
    for (int k = 0; k < n_cuts; ++k)
      even[static_cast<size_t>(k)] =
          std::clamp(static_cast<int>(std::lround(static_cast<double>(G) * (k + 1) / (n_cuts + 1))), 0, G);
    starts.push_back(even);

    std::vector<int> mids;
    for (const auto& u : utils)
      for (const auto& b : u.blocks)
        if (b.density != 0.0)
          mids.push_back(std::clamp(
              static_cast<int>(std::lround(static_cast<double>(G) * (b.start + b.end) / 2.0)), 0, G));
    std::sort(mids.begin(), mids.end());
    mids.erase(std::unique(mids.begin(), mids.end()), mids.end());
    if (!mids.empty()) {
      std::vector<int> pick = even;
      for (int k = 0; k < n_cuts && k < static_cast<int>(mids.size()); ++k) {
        size_t idx = mids.size() == 1
                         ? 0
                         : static_cast<size_t>(std::lround(
                               static_cast<double>(k) * (mids.size() - 1) / std::max(1, n_cuts - 1)));
        pick[static_cast<size_t>(k)] = mids[idx];
      }
      std::sort(pick.begin(), pick.end());
      starts.push_back(pick);
    }
  }

  for (auto cuts : starts) {
    std::sort(cuts.begin(), cuts.end());
    double best = halving_objective(prefix, cuts, G);
    for (int sweep = 0; sweep < 100 && best > eps; ++sweep) {
      bool improved = false;
      for (int j = 0; j < n_cuts; ++j) {
        int best_g = cuts[static_cast<size_t>(j)];
        for (int g = 0; g <= G; ++g) {
          std::vector<int> trial = cuts;
          trial[static_cast<size_t>(j)] = g;
          std::sort(trial.begin(), trial.end());
          double obj = halving_objective(prefix, trial, G);
          if (obj < best - 1e-15) {
            best = obj;
            best_g = g;
            improved = true;
          }
        }
        cuts[static_cast<size_t>(j)] = best_g;
        std::sort(cuts.begin(), cuts.end());
      }
      if (!improved) break;
    }
    if (best <= eps) {
      PieceCollection raw;
      for (int g : cuts)
        if (g > 0 && g < G) raw.cuts.push_back(static_cast<double>(g) / G);
      // rebuild alternating sides over the kept cuts, preserving parity
      // with the dropped boundary cuts
      int parity = 0;
      for (int g : cuts)
        if (g == 0) parity ^= 1;
      for (size_t k = 0; k <= raw.cuts.size(); ++k) raw.side.push_back(static_cast<int>(k + parity) % 2);
      // recompute exact alternation: duplicates among kept cuts flip twice
      return canonicalize(raw);
    }
  }
  return std::nullopt;
}

std::optional<ChThenPickResult> ch_then_pick(const std::vector<AdditivePiecewiseConstant>& utils,
                                             int k1, int k2, double eps, int grid_resolution) {
  int n = static_cast<int>(utils.size());
  if (k1 + k2 != n) throw std::invalid_argument("group sizes must sum to the player count");
  if (n < 2) throw std::invalid_argument("need at least two players");
  std::vector<AdditivePiecewiseConstant> rest(utils.begin(), utils.end() - 1);
  auto col = consensus_halving_grid(rest, n - 1, eps, grid_resolution);
  if (!col) return std::nullopt;
  ChThenPickResult r;
  r.collection = *col;
  double u0 = col->utility(utils.back(), 0);
  double u1 = col->utility(utils.back(), 1);
  int picked = u0 >= u1 ? 0 : 1;
  r.group_of.assign(static_cast<size_t>(n), -1);
  r.group_of.back() = picked;
  int room0 = k1 - (picked == 0 ? 1 : 0);
  for (int i = 0; i + 1 < n; ++i) {
    r.group_of[static_cast<size_t>(i)] = room0 > 0 ? 0 : 1;
    if (room0 > 0) --room0;
  }
  return r;
}

bool physically_consistent_two_piece(const std::function<Side(double)>& eval_at_cut) {
  auto whole_vs_empty = [](Side s, bool whole_is_right) {
    // -1: empty preferred, 0: tie, +1: whole preferred
    if (s == Side::Both) return 0;
    bool whole = (s == Side::Right) == whole_is_right;
    return whole ? 1 : -1;
  };
  int at0 = whole_vs_empty(eval_at_cut(0.0), /*whole_is_right=*/true);
  int at1 = whole_vs_empty(eval_at_cut(1.0), /*whole_is_right=*/false);
  return at0 == at1;
}

}  // namespace fairslice
