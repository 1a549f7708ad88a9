#include "fairslice/chores.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fairslice {

std::vector<double> hat(const Partition& x) {
  int m = x.pieces();
  std::vector<double> out(static_cast<size_t>(m));
  for (int j = 0; j < m; ++j)
    out[static_cast<size_t>(j)] = 1.0 - (m - 1) * x.lengths[static_cast<size_t>(j)];
  return out;
}

bool in_delta(const Partition& x) {
  int m = x.pieces();
  if (m == 1) return true;
  double cap = 1.0 / (m - 1);
  for (double v : x.lengths)
    if (v > cap + kSimplexTol) return false;
  return true;
}

namespace {

Partition clamped_partition(std::vector<double> lengths) {
  for (double& v : lengths)
    if (v < 0.0 && v > -kInputTol) v = 0.0;
  Partition p;
  p.lengths = std::move(lengths);
  return p;
}

}  // namespace

DemandFn lift_demand(DemandFn lazy, int m) {
  if (m < 2) throw std::invalid_argument("lift_demand needs m >= 2");
  double cap = 1.0 / (m - 1);
  return [lazy = std::move(lazy), m, cap](const Partition& x) {
    if (x.pieces() != m) throw std::invalid_argument("partition has the wrong piece count");
    if (in_delta(x)) return lazy(clamped_partition(hat(x)));
    std::vector<int> out;
    for (int j = 0; j < m; ++j)
      if (x.lengths[static_cast<size_t>(j)] >= cap - kSimplexTol) out.push_back(j);
    return out;
  };
}

double cost_halving_point(const AdditivePiecewiseConstant& u) {
  if (u.min_density() <= 0.0)
    throw std::invalid_argument("cost-halving needs strictly positive densities");
  double half = u.total() / 2.0;
  double acc = 0.0;
  for (const auto& b : u.blocks) {
    double next = acc + (b.end - b.start) * b.density;
    if (next >= half) return b.start + (half - acc) / b.density;
    acc = next;
  }
  return 1.0;  // unreachable for positive densities
}

TwoPiecePreference lifted_two_piece(const AdditivePiecewiseConstant& cost) {
  double t = 1.0 - cost_halving_point(cost);
  return TwoPiecePreference::make({0.0, t, 1.0}, {Side::Right, Side::Left});
}

ChoreSolution solve_chores(const std::vector<AdditivePiecewiseConstant>& costs,
                           const std::vector<int>& group_sizes, double tolerance,
                           const SolveOptions& opts) {
  int n = static_cast<int>(costs.size());
  int m = static_cast<int>(group_sizes.size());
  if (std::accumulate(group_sizes.begin(), group_sizes.end(), 0) != n)
    throw std::invalid_argument("group sizes must sum to the player count");
  for (int i = 0; i < n; ++i) {
    ValidationReport r = validate_lazy(costs[static_cast<size_t>(i)]);
    if (!r.pass)
      throw std::invalid_argument("player " + std::to_string(i) + " fails lazy validation: " +
                                  (r.violations.empty() ? "" : r.violations.front()));
  }

  ChoreSolution sol;
  if (m == 1) {
    sol.assignment.partition = Partition{{1.0}};
    sol.assignment.groups.resize(1);
    for (int i = 0; i < n; ++i) sol.assignment.groups[0].push_back(i);
    sol.exact = true;
    return sol;
  }

  if (m == 2 && (group_sizes[0] == 1 || group_sizes[1] == 1)) {
    // Exact path: lift to monotone two-piece preferences over the
    // exemption cut and run the finite singleton protocol on them.
    std::vector<TwoPiecePreference> lifted;
    lifted.reserve(static_cast<size_t>(n));
    for (const auto& c : costs) lifted.push_back(lifted_two_piece(c));
    TwoPieceSession session(std::move(lifted));
    ProtocolReport report =
        group_sizes[0] == 1 ? singleton_first(session) : singleton_last(session);
    double y = report.assignment.partition.lengths[0];
    sol.assignment.partition = clamped_partition({1.0 - y, y});
    sol.assignment.groups = report.assignment.groups;
    sol.exact = true;
    sol.transcript = report.transcript;
    return sol;
  }

  std::vector<DemandFn> lifted;
  lifted.reserve(static_cast<size_t>(n));
  for (const auto& c : costs) lifted.push_back(lift_demand(make_additive_cost_demand(c), m));
  GroupSolution gs = solve_groups(lifted, group_sizes, tolerance, opts);
  const Partition& y = gs.assignment.partition;
  // Outside delta at most m-1 pieces can be demanded, so an envy-free
  // point of the lifted instance must land (up to solver tolerance)
  // inside delta.
  double cap = 1.0 / (m - 1);
  for (double v : y.lengths)
    if (v > cap + tolerance + kSimplexTol)
      throw InvariantError("lifted solution escaped the delta sub-simplex");
  sol.assignment.partition = clamped_partition(hat(y));
  sol.assignment.groups = gs.assignment.groups;
  sol.exact = false;
  return sol;
}

}  // namespace fairslice
