#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fairslice {

// Internal simplex-membership tolerance and user-input tolerance are
// deliberately separate: values we compute stay within 1e-12, values we
// read from files only have to be good to 1e-9.
inline constexpr double kSimplexTol = 1e-12;
inline constexpr double kInputTol = 1e-9;
inline constexpr double kTieTol = 1e-9;

// Thrown when an internal invariant that the construction guarantees is
// violated anyway. Always a bug, never user error.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

enum class Side { Left, Right, Both };

std::string to_string(Side s);

/// Division of [0,1] into m contiguous pieces, stored as lengths.
/// A valid Partition is a point of the standard simplex.
struct Partition {
  std::vector<double> lengths;

  int pieces() const { return static_cast<int>(lengths.size()); }

  /// Cumulative cut point c_j = x_1 + ... + x_j, with c_0 = 0.
  double cut(int j) const;

  /// All m+1 cut points, c_0 = 0 through c_m = 1.
  std::vector<double> cuts() const;
};

/// Validates lengths as a partition: entries nonnegative, sum within
/// kInputTol of one. Tiny negative entries (rounding noise) are clamped.
Partition validate_partition(const std::vector<double>& lengths);

/// Partition plus a division of the players into m groups.
struct Assignment {
  Partition partition;
  std::vector<std::vector<int>> groups;  // groups[j] = player indices of group j

  int players() const;
};

/// Checks group sizes and disjointness against n players.
void validate_assignment(const Assignment& a, int n);

/// Finite description of a left/right preference over single-cut
/// partitions: strictly increasing breakpoints 0 = b_0 < ... < b_K = 1
/// and one label per interval. Canonical form has no two adjacent equal
/// labels, so every interior breakpoint is a genuine switch and evaluates
/// to Both (the preferred set at a point is the union over the closures
/// of the intervals containing it).
struct TwoPiecePreference {
  std::vector<double> breakpoints;
  std::vector<Side> labels;  // Left or Right only, one per interval

  /// Canonicalizes (merges adjacent equal labels) and validates.
  static TwoPiecePreference make(std::vector<double> breakpoints,
                                 std::vector<Side> labels);

  Side eval(double x) const;

  /// Hungry form: only-right at 0, only-left at 1.
  bool hungry() const { return labels.front() == Side::Right && labels.back() == Side::Left; }

  /// Exactly one switch, i.e. monotone preference.
  bool monotone() const { return labels.size() == 2; }

  /// Interior breakpoints (the indifference set).
  std::vector<double> switches() const;

  /// Reflection about 1/2: breakpoints mapped x -> 1-x, labels swapped.
  TwoPiecePreference reflected() const;

  bool operator==(const TwoPiecePreference&) const = default;
};

/// Finitely additive signed measure on [0,1] given by a piecewise
/// constant density. Blocks are sorted, contiguous and cover [0,1].
struct AdditivePiecewiseConstant {
  struct Block {
    double start;
    double end;
    double density;
  };
  std::vector<Block> blocks;

  static AdditivePiecewiseConstant make(std::vector<Block> blocks);

  /// Signed measure of [a,b].
  double integral(double a, double b) const;

  double total() const { return integral(0.0, 1.0); }

  double min_density() const;
};

/// Demand function: partition -> nonempty set of preferred piece indices
/// (0-based, sorted).
using DemandFn = std::function<std::vector<int>(const Partition&)>;

/// Argmax-of-utility demand (hungry cake semantics). Ties within kTieTol
/// yield all maximizers.
std::vector<int> additive_demand(const AdditivePiecewiseConstant& u, const Partition& x);

/// Argmin-of-cost demand (lazy chore semantics).
std::vector<int> additive_cost_demand(const AdditivePiecewiseConstant& u, const Partition& x);

DemandFn make_additive_demand(AdditivePiecewiseConstant u);
DemandFn make_additive_cost_demand(AdditivePiecewiseConstant u);

/// Demand of a two-piece preference over 2-piece partitions.
DemandFn make_two_piece_demand(TwoPiecePreference p);

/// Sums runs of adjacent pieces: piece j of the output is the union of
/// group_sizes[j] consecutive pieces of x.
Partition merge_adjacent(const Partition& x, const std::vector<int>& group_sizes);

struct ValidationReport {
  bool pass = true;
  bool exact = true;  // false when the check was sampled, not structural
  std::vector<std::string> violations;
};

ValidationReport validate_hungry(const TwoPiecePreference& p);
ValidationReport validate_hungry(const AdditivePiecewiseConstant& u);

/// Lazy semantics check: with at least one empty piece, the demand must
/// be exactly the set of empty pieces (Lemma-2 behaviour). Exact for
/// strictly positive densities, plus sampled structural patterns.
ValidationReport validate_lazy(const AdditivePiecewiseConstant& u, int max_pieces = 4);

}  // namespace fairslice
