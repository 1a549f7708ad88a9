#pragma once

#include "fairslice/ef_solver.hpp"
#include "fairslice/protocols.hpp"

namespace fairslice {

/// Exemption transform x_j -> 1 - (m-1) x_j. Coordinates always sum to
/// one; the image is a partition exactly when x lies in the sub-simplex
/// delta (every piece at most 1/(m-1)).
std::vector<double> hat(const Partition& x);

/// x in delta: every length <= 1/(m-1) (+ kSimplexTol). For m = 2 this
/// is all of the simplex.
bool in_delta(const Partition& x);

/// Lifts a lazy demand over m pieces to a hungry one: follow the lazy
/// demand through the hat transform inside delta, and demand the
/// over-long pieces (>= 1/(m-1)) outside it.
DemandFn lift_demand(DemandFn lazy, int m);

/// Cost-halving point of a strictly positive additive cost: the unique
/// s with u([0,s]) = u([s,1]).
double cost_halving_point(const AdditivePiecewiseConstant& u);

/// Lifted preference of a lazy additive cost for m = 2, as an explicit
/// two-piece preference over the exemption cut. Monotone single switch
/// at 1 - cost_halving_point.
TwoPiecePreference lifted_two_piece(const AdditivePiecewiseConstant& cost);

struct ChoreSolution {
  Assignment assignment;
  bool exact = false;        // true on the protocol path (m=2, singleton group)
  QueryTranscript transcript;  // protocol path only
};

/// Theorem-3 pipeline: validate laziness, lift, solve the hungry
/// instance, check the solution lands in delta, and map back through
/// hat. m = 2 with a singleton group uses the exact finite protocol on
/// the lifted preferences; everything else goes through the simplex
/// solver.
ChoreSolution solve_chores(const std::vector<AdditivePiecewiseConstant>& costs,
                           const std::vector<int>& group_sizes, double tolerance,
                           const SolveOptions& opts = {});

}  // namespace fairslice
