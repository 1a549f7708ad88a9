#pragma once

#include <cstdint>

#include "fairslice/core.hpp"

namespace fairslice {

/// Fully labeled elementary simplex found by the solver. Vertex owners
/// are a permutation of the players and vertex labels a permutation of
/// the pieces; each label lies in the owner's demand set at that vertex.
struct SpernerCertificate {
  struct Vertex {
    std::vector<double> partition;
    int owner;
    int label;
  };
  std::vector<Vertex> vertices;
  double diameter = 0.0;  // max L-inf distance between vertex partitions
};

struct SolveOptions {
  // Hard cap on demand evaluations (one per labeled grid vertex).
  std::int64_t max_demand_evals = 50'000'000;
};

struct IndividualSolution {
  Partition partition;                // barycenter of the certificate simplex
  std::vector<int> piece_of_player;   // bijection players -> pieces
  SpernerCertificate certificate;
  std::int64_t demand_evals = 0;
};

/// epsilon-approximate envy-free division for n hungry players with one
/// piece each: triangulates the simplex at resolution 1/tolerance with
/// an owner assignment that puts all n players on every elementary
/// simplex, labels each vertex by its owner's demand, and returns a
/// fully labeled simplex (exists by Sperner's lemma).
IndividualSolution solve_individual(const std::vector<DemandFn>& demands, double tolerance,
                                    const SolveOptions& opts = {});

/// Re-evaluates every certificate vertex against the demands: owners are
/// a permutation, labels are a permutation, each label is demanded at
/// its vertex, and the diameter is within tolerance.
bool check_certificate(const SpernerCertificate& cert, const std::vector<DemandFn>& demands,
                       double tolerance);

struct GroupSolution {
  Assignment assignment;
  IndividualSolution individual;  // solution of the derived n-piece instance
};

/// Group reduction: pseudo-player t demands piece t exactly when the
/// group piece containing t is demanded at the merged partition. Solves
/// the individual instance and merges pieces back into group pieces.
GroupSolution solve_groups(const std::vector<DemandFn>& demands,
                           const std::vector<int>& group_sizes, double tolerance,
                           const SolveOptions& opts = {});

/// Worst envy (utility of a better piece minus utility of the own
/// piece, clamped at 0) over all players of an additive instance.
double envy_slack(const Assignment& a, const std::vector<AdditivePiecewiseConstant>& utils);

}  // namespace fairslice
