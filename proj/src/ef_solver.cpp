#include "fairslice/ef_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace fairslice {

namespace {

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Number of monotone vectors 0 <= s_1 <= ... <= s_d <= N, i.e. C(N+d, d).
double grid_vertex_count(int N, int d) {
  double c = 1.0;
  for (int i = 1; i <= d; ++i) c *= static_cast<double>(N + i) / i;
  return c;
}

std::vector<double> partition_of(const std::vector<int>& s, int N, int n) {
  std::vector<double> x(static_cast<size_t>(n));
  int prev = 0;
  for (int j = 0; j < n - 1; ++j) {
    x[static_cast<size_t>(j)] = static_cast<double>(s[static_cast<size_t>(j)] - prev) / N;
    prev = s[static_cast<size_t>(j)];
  }
  x[static_cast<size_t>(n - 1)] = static_cast<double>(N - prev) / N;
  return x;
}

}  // namespace

IndividualSolution solve_individual(const std::vector<DemandFn>& demands, double tolerance,
                                    const SolveOptions& opts) {
  int n = static_cast<int>(demands.size());
  if (n == 0) throw std::invalid_argument("need at least one player");
  if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");
  IndividualSolution sol;
  if (n == 1) {
    sol.partition = Partition{{1.0}};
    sol.piece_of_player = {0};
    sol.certificate.vertices.push_back({{1.0}, 0, 0});
    return sol;
  }

  // Grid resolution: L-inf diameter of an elementary simplex is exactly
  // 1/N, so the first N meeting the tolerance is enough.
  int N = std::max(1, static_cast<int>(std::ceil(1.0 / tolerance)));
  int d = n - 1;  // cut-point coordinates 0 <= s_1 <= ... <= s_d <= N

  std::unordered_map<std::vector<int>, int, VecHash> label_memo;
  std::int64_t evals = 0;
  auto vertex_label = [&](const std::vector<int>& s) {
    auto it = label_memo.find(s);
    if (it != label_memo.end()) return it->second;
    if (evals >= opts.max_demand_evals)
      throw std::runtime_error("tolerance not reachable within the demand-evaluation budget");
    // Owner: moves of the triangulation shift the coordinate sum by one,
    // so the sum mod n runs through all players on every simplex.
    int owner = 0;
    for (int v : s) owner += v;
    owner %= n;
    Partition x;
    x.lengths = partition_of(s, N, n);
    std::vector<int> demand = demands[static_cast<size_t>(owner)](x);
    ++evals;
    if (demand.empty()) throw InvariantError("empty demand set");
    // Any demanded nonempty piece is a valid label. Spread ties by owner so
    // that indifference regions carry all labels and get found quickly.
    std::vector<int> candidates;
    for (int j : demand)
      if (x.lengths.at(static_cast<size_t>(j)) > 0.0) candidates.push_back(j);
    if (candidates.empty())
      throw InvariantError("demand contains only empty pieces (player not hungry)");
    int label = candidates[static_cast<size_t>(owner) % candidates.size()];
    label_memo.emplace(s, label);
    return label;
  };

  // Enumerate elementary simplices: a top vertex s and a permutation of
  // the d unit moves s -> s - e_j, valid while the chain stays monotone.
  // Start the scan at the simplex whose top vertex sits at the equal-split
  // point, then wrap cyclically through the whole grid: near-uniform demands
  // make the centre region fully labeled, so the common case exits early.
  std::vector<int> start(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j)
    start[static_cast<size_t>(j)] =
        static_cast<int>(std::llround(static_cast<double>(N) * (j + 1) / n));
  std::vector<int> base = start;
  std::vector<int> perm(static_cast<size_t>(d));
  bool done = false;
  while (!done) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<std::vector<int>> verts{base};
      bool valid = true;
      std::vector<int> cur = base;
      for (int k = 0; k < d; ++k) {
        int j = perm[static_cast<size_t>(k)];
        int floor_j = (j == 0) ? 0 : cur[static_cast<size_t>(j - 1)];
        if (cur[static_cast<size_t>(j)] - 1 < floor_j) {
          valid = false;
          break;
        }
        cur[static_cast<size_t>(j)] -= 1;
        verts.push_back(cur);
      }
      if (!valid) continue;
      std::vector<int> labels(verts.size());
      std::vector<bool> seen(static_cast<size_t>(n), false);
      bool full = true;
      for (size_t v = 0; v < verts.size(); ++v) {
        labels[v] = vertex_label(verts[v]);
        if (seen[static_cast<size_t>(labels[v])]) {
          full = false;
          break;
        }
        seen[static_cast<size_t>(labels[v])] = true;
      }
      if (!full) continue;

      // Fully labeled simplex: build the certificate.
      SpernerCertificate cert;
      for (size_t v = 0; v < verts.size(); ++v) {
        int owner = 0;
        for (int val : verts[v]) owner += val;
        cert.vertices.push_back({partition_of(verts[v], N, n), owner % n, labels[v]});
      }
      for (const auto& a : cert.vertices)
        for (const auto& b : cert.vertices)
          for (size_t j = 0; j < a.partition.size(); ++j)
            cert.diameter = std::max(cert.diameter, std::abs(a.partition[j] - b.partition[j]));

      std::vector<double> bary(static_cast<size_t>(n), 0.0);
      for (const auto& v : cert.vertices)
        for (size_t j = 0; j < bary.size(); ++j) bary[j] += v.partition[j] / n;
      sol.partition = validate_partition(bary);
      sol.piece_of_player.assign(static_cast<size_t>(n), -1);
      for (const auto& v : cert.vertices)
        sol.piece_of_player[static_cast<size_t>(v.owner)] = v.label;
      sol.certificate = std::move(cert);
      sol.demand_evals = evals;
      return sol;
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Advance the top vertex through all monotone vectors, wrapping past the
    // last one back to the first; stop once the scan returns to its start.
    int j = d - 1;
    while (j >= 0) {
      if (base[static_cast<size_t>(j)] < N) {
        ++base[static_cast<size_t>(j)];
        for (int t = j + 1; t < d; ++t)
          base[static_cast<size_t>(t)] = base[static_cast<size_t>(j)];
        break;
      }
      --j;
    }
    if (j < 0) base.assign(static_cast<size_t>(d), 0);
    if (base == start) done = true;
  }
  throw InvariantError("no fully labeled simplex found; demands violate hungriness or closedness");
}

bool check_certificate(const SpernerCertificate& cert, const std::vector<DemandFn>& demands,
                       double tolerance) {
  int n = static_cast<int>(demands.size());
  if (static_cast<int>(cert.vertices.size()) != n) return false;
  std::vector<bool> owner_seen(static_cast<size_t>(n), false);
  std::vector<bool> label_seen(static_cast<size_t>(n), false);
  double diam = 0.0;
  for (const auto& v : cert.vertices) {
    if (v.owner < 0 || v.owner >= n || v.label < 0 || v.label >= n) return false;
    if (owner_seen[static_cast<size_t>(v.owner)] || label_seen[static_cast<size_t>(v.label)])
      return false;
    owner_seen[static_cast<size_t>(v.owner)] = true;
    label_seen[static_cast<size_t>(v.label)] = true;
    Partition x;
    x.lengths = v.partition;
    std::vector<int> demand = demands[static_cast<size_t>(v.owner)](x);
    if (!std::binary_search(demand.begin(), demand.end(), v.label)) return false;
    for (const auto& w : cert.vertices)
      for (size_t j = 0; j < v.partition.size(); ++j)
        diam = std::max(diam, std::abs(v.partition[j] - w.partition[j]));
  }
  return diam <= tolerance + kSimplexTol;
}

GroupSolution solve_groups(const std::vector<DemandFn>& demands,
                           const std::vector<int>& group_sizes, double tolerance,
                           const SolveOptions& opts) {
  int n = static_cast<int>(demands.size());
  int total = std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
  if (total != n) throw std::invalid_argument("group sizes must sum to the player count");
  int m = static_cast<int>(group_sizes.size());
  std::vector<int> group_of(static_cast<size_t>(n));
  {
    int t = 0;
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < group_sizes[static_cast<size_t>(j)]; ++k)
        group_of[static_cast<size_t>(t++)] = j;
  }

  std::vector<DemandFn> pseudo;
  pseudo.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    pseudo.push_back([&demands, &group_of, group_sizes, i](const Partition& x) {
      Partition merged = merge_adjacent(x, group_sizes);
      std::vector<int> d = demands[static_cast<size_t>(i)](merged);
      std::vector<int> out;
      for (int t = 0; t < x.pieces(); ++t)
        if (std::binary_search(d.begin(), d.end(), group_of[static_cast<size_t>(t)]))
          out.push_back(t);
      return out;
    });
  }

  GroupSolution gs;
  gs.individual = solve_individual(pseudo, tolerance, opts);
  gs.assignment.partition = merge_adjacent(gs.individual.partition, group_sizes);
  gs.assignment.groups.assign(static_cast<size_t>(m), {});
  for (int i = 0; i < n; ++i) {
    int piece = gs.individual.piece_of_player[static_cast<size_t>(i)];
    gs.assignment.groups[static_cast<size_t>(group_of[static_cast<size_t>(piece)])].push_back(i);
  }
  return gs;
}

double envy_slack(const Assignment& a, const std::vector<AdditivePiecewiseConstant>& utils) {
  std::vector<double> cuts = a.partition.cuts();
  double worst = 0.0;
  for (size_t j = 0; j < a.groups.size(); ++j) {
    for (int i : a.groups[j]) {
      double own = utils[static_cast<size_t>(i)].integral(cuts[j], cuts[j + 1]);
      for (size_t k = 0; k < a.groups.size(); ++k) {
        double other = utils[static_cast<size_t>(i)].integral(cuts[k], cuts[k + 1]);
        worst = std::max(worst, other - own);
      }
    }
  }
  return worst;
}

}  // namespace fairslice
