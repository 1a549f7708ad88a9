#pragma once

#include <array>
#include <optional>

#include "fairslice/core.hpp"

namespace fairslice {

/// Split of [0,1] into two (possibly non-contiguous) collections: sorted
/// interior cuts and, per resulting interval, which collection it joins
/// (0 or 1).
struct PieceCollection {
  std::vector<double> cuts;
  std::vector<int> side;  // size cuts.size() + 1, entries 0 or 1

  int cut_count() const { return static_cast<int>(cuts.size()); }

  /// Signed utility of collection s under u.
  double utility(const AdditivePiecewiseConstant& u, int s) const;
};

/// The lower-bound family: player i carries total utility +1 (odd index,
/// 1-based) or -1 (even) spread uniformly over [(i-1)/n, i/n].
std::vector<AdditivePiecewiseConstant> gen_counterexample(int n);

struct CollectionEfReport {
  bool envy_free = false;
  std::vector<std::array<double, 2>> utilities;  // per player, per collection
  std::vector<int> group_of;                     // a witnessing grouping when EF
};

/// Envy-freeness of the two collections for groups of sizes (k1, k2):
/// some grouping must give every player a weakly preferred collection.
CollectionEfReport verify_collection_ef(const PieceCollection& c,
                                        const std::vector<AdditivePiecewiseConstant>& utils,
                                        int k1, int k2, double tie_eps = kTieTol);

struct MinCutResult {
  std::optional<PieceCollection> collection;
  std::vector<int> group_of;
  std::int64_t configurations_checked = 0;
};

/// Exhaustive grid search over cut counts 0..max_cuts with cut positions
/// on a uniform grid of the given resolution. Labels alternate (a
/// repeated label is equivalent to fewer cuts, already covered).
/// Deterministic: the lexicographically first solution wins. Absence is
/// grid-level evidence, not a proof.
MinCutResult min_cut_search(const std::vector<AdditivePiecewiseConstant>& utils, int k1, int k2,
                            int max_cuts, int grid_resolution, double tie_eps = kTieTol);

/// Grid consensus halving: looks for alternating-label cuts giving every
/// player utilities within eps of each other on the two collections.
/// Deterministic coordinate-descent over grid positions from a fixed set
/// of starting placements; reports absence if none converges.
std::optional<PieceCollection> consensus_halving_grid(
    const std::vector<AdditivePiecewiseConstant>& utils, int n_cuts, double eps,
    int grid_resolution);

struct ChThenPickResult {
  PieceCollection collection;
  std::vector<int> group_of;
};

/// Consensus halving for the first n-1 players, then the last player
/// picks the preferred collection for their group. Envy-free for any
/// group sizes within the halving slack, with at most n-1 cuts.
std::optional<ChThenPickResult> ch_then_pick(const std::vector<AdditivePiecewiseConstant>& utils,
                                             int k1, int k2, double eps, int grid_resolution);

/// Two-piece demand of a signed utility defined through point-set
/// utilities, so measure-identical partitions always agree (physical
/// consistency). Returns false when a claimed demand prefers the whole
/// cake over the empty cake and vice versa.
bool physically_consistent_two_piece(const std::function<Side(double)>& eval_at_cut);

}  // namespace fairslice
