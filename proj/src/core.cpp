#include "fairslice/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fairslice {

std::string to_string(Side s) {
  switch (s) {
    case Side::Left: return "L";
    case Side::Right: return "R";
    case Side::Both: return "B";
  }
  return "?";
}

double Partition::cut(int j) const {
  double c = 0.0;
  for (int i = 0; i < j; ++i) c += lengths[i];
  return c;
}

std::vector<double> Partition::cuts() const {
  std::vector<double> c(lengths.size() + 1, 0.0);
  for (size_t i = 0; i < lengths.size(); ++i) c[i + 1] = c[i] + lengths[i];
  c.back() = 1.0;
  return c;
}

Partition validate_partition(const std::vector<double>& lengths) {
  if (lengths.empty()) throw std::invalid_argument("partition needs at least one piece");
  Partition p;
  p.lengths = lengths;
  double sum = 0.0;
  for (double& v : p.lengths) {
    if (v < -kSimplexTol) {
      std::ostringstream os;
      os << "negative piece length " << v;
      throw std::invalid_argument(os.str());
    }
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (std::abs(sum - 1.0) > kInputTol) {
    std::ostringstream os;
    os << "piece lengths sum to " << sum << ", expected 1";
    throw std::invalid_argument(os.str());
  }
  return p;
}

int Assignment::players() const {
  int n = 0;
  for (const auto& g : groups) n += static_cast<int>(g.size());
  return n;
}

void validate_assignment(const Assignment& a, int n) {
  if (static_cast<int>(a.groups.size()) != a.partition.pieces())
    throw std::invalid_argument("group count does not match piece count");
  std::vector<bool> seen(n, false);
  for (const auto& g : a.groups) {
    for (int i : g) {
      if (i < 0 || i >= n) throw std::invalid_argument("player index out of range");
      if (seen[i]) throw std::invalid_argument("player assigned twice");
      seen[i] = true;
    }
  }
  if (a.players() != n) throw std::invalid_argument("groups do not cover all players");
}

TwoPiecePreference TwoPiecePreference::make(std::vector<double> breakpoints,
                                            std::vector<Side> labels) {
  if (breakpoints.size() < 2 || labels.size() + 1 != breakpoints.size())
    throw std::invalid_argument("breakpoint/label count mismatch");
  if (breakpoints.front() != 0.0 || breakpoints.back() != 1.0)
    throw std::invalid_argument("breakpoints must start at 0 and end at 1");
  for (size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  for (Side s : labels)
    if (s == Side::Both) throw std::invalid_argument("interval labels must be Left or Right");

  // Canonicalize: merge adjacent intervals with equal labels.
  TwoPiecePreference p;
  p.breakpoints.push_back(0.0);
  for (size_t i = 0; i < labels.size(); ++i) {
    if (!p.labels.empty() && p.labels.back() == labels[i]) {
      p.breakpoints.back() = breakpoints[i + 1];
    } else {
      p.labels.push_back(labels[i]);
      p.breakpoints.push_back(breakpoints[i + 1]);
    }
  }
  return p;
}

Side TwoPiecePreference::eval(double x) const {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("point outside [0,1]");
  // Interior breakpoints are switch points by canonicality.
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  if (it != breakpoints.end() && *it == x) {
    size_t k = static_cast<size_t>(it - breakpoints.begin());
    if (k > 0 && k + 1 < breakpoints.size()) return Side::Both;
    return k == 0 ? labels.front() : labels.back();
  }
  size_t k = static_cast<size_t>(it - breakpoints.begin());
  return labels[k - 1];
}

std::vector<double> TwoPiecePreference::switches() const {
  return {breakpoints.begin() + 1, breakpoints.end() - 1};
}

TwoPiecePreference TwoPiecePreference::reflected() const {
  std::vector<double> bp(breakpoints.rbegin(), breakpoints.rend());
  for (double& b : bp) b = 1.0 - b;
  bp.front() = 0.0;
  bp.back() = 1.0;
  std::vector<Side> lb(labels.rbegin(), labels.rend());
  for (Side& s : lb) s = (s == Side::Left) ? Side::Right : Side::Left;
  return make(std::move(bp), std::move(lb));
}

AdditivePiecewiseConstant AdditivePiecewiseConstant::make(std::vector<Block> blocks) {
  if (blocks.empty()) throw std::invalid_argument("need at least one block");
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.start < b.start; });
  if (std::abs(blocks.front().start) > kInputTol || std::abs(blocks.back().end - 1.0) > kInputTol)
    throw std::invalid_argument("blocks must cover [0,1]");
  blocks.front().start = 0.0;
  blocks.back().end = 1.0;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].end <= blocks[i].start)
      throw std::invalid_argument("empty or inverted block");
    if (i > 0) {
      if (std::abs(blocks[i].start - blocks[i - 1].end) > kInputTol)
        throw std::invalid_argument("blocks must be contiguous");
      blocks[i].start = blocks[i - 1].end;
    }
  }
  AdditivePiecewiseConstant u;
  u.blocks = std::move(blocks);
  return u;
}

double AdditivePiecewiseConstant::integral(double a, double b) const {
  if (b < a) return -integral(b, a);
  double sum = 0.0;
  for (const Block& blk : blocks) {
    double lo = std::max(a, blk.start);
    double hi = std::min(b, blk.end);
    if (hi > lo) sum += (hi - lo) * blk.density;
  }
  return sum;
}

double AdditivePiecewiseConstant::min_density() const {
  double m = blocks.front().density;
  for (const Block& b : blocks) m = std::min(m, b.density);
  return m;
}

namespace {

std::vector<double> piece_utilities(const AdditivePiecewiseConstant& u, const Partition& x) {
  std::vector<double> cuts = x.cuts();
  std::vector<double> vals(x.pieces());
  for (int j = 0; j < x.pieces(); ++j) vals[j] = u.integral(cuts[j], cuts[j + 1]);
  return vals;
}

std::vector<int> arg_extreme(const std::vector<double>& vals, bool want_max) {
  double best = vals[0];
  for (double v : vals) best = want_max ? std::max(best, v) : std::min(best, v);
  std::vector<int> out;
  for (size_t j = 0; j < vals.size(); ++j)
    if (std::abs(vals[j] - best) <= kTieTol) out.push_back(static_cast<int>(j));
  return out;
}

}  // namespace

std::vector<int> additive_demand(const AdditivePiecewiseConstant& u, const Partition& x) {
  return arg_extreme(piece_utilities(u, x), true);
}

std::vector<int> additive_cost_demand(const AdditivePiecewiseConstant& u, const Partition& x) {
  return arg_extreme(piece_utilities(u, x), false);
}

DemandFn make_additive_demand(AdditivePiecewiseConstant u) {
  return [u = std::move(u)](const Partition& x) { return additive_demand(u, x); };
}

DemandFn make_additive_cost_demand(AdditivePiecewiseConstant u) {
  return [u = std::move(u)](const Partition& x) { return additive_cost_demand(u, x); };
}

DemandFn make_two_piece_demand(TwoPiecePreference p) {
  return [p = std::move(p)](const Partition& x) {
    if (x.pieces() != 2) throw std::invalid_argument("two-piece demand needs a 2-piece partition");
    Side s = p.eval(x.lengths[0]);
    std::vector<int> out;
    if (s == Side::Left || s == Side::Both) out.push_back(0);
    if (s == Side::Right || s == Side::Both) out.push_back(1);
    return out;
  };
}

Partition merge_adjacent(const Partition& x, const std::vector<int>& group_sizes) {
  int total = std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
  if (total != x.pieces()) throw std::invalid_argument("group sizes do not sum to piece count");
  Partition out;
  int t = 0;
  for (int k : group_sizes) {
    if (k <= 0) throw std::invalid_argument("group sizes must be positive");
    double sum = 0.0;
    for (int i = 0; i < k; ++i) sum += x.lengths[t++];
    out.lengths.push_back(sum);
  }
  return out;
}

ValidationReport validate_hungry(const TwoPiecePreference& p) {
  ValidationReport r;
  if (p.labels.front() != Side::Right) {
    r.pass = false;
    r.violations.push_back("prefers the (empty) left piece at 0");
  }
  if (p.labels.back() != Side::Left) {
    r.pass = false;
    r.violations.push_back("prefers the (empty) right piece at 1");
  }
  return r;
}

ValidationReport validate_hungry(const AdditivePiecewiseConstant& u) {
  // An empty piece has utility 0, so it joins the argmax exactly when no
  // piece beats 0. Pieces cover the cake and their utilities sum to the
  // total, so total > 0 rules that out for every partition; total <= 0
  // fails already at the whole-cake-plus-empty-pieces partition.
  ValidationReport r;
  if (u.total() <= kTieTol) {
    r.pass = false;
    std::ostringstream os;
    os << "total utility " << u.total() << " <= 0: the empty piece ties or beats "
       << "every piece in some partition";
    r.violations.push_back(os.str());
  }
  return r;
}

ValidationReport validate_lazy(const AdditivePiecewiseConstant& u, int max_pieces) {
  ValidationReport r;
  if (u.min_density() <= 0.0) {
    r.pass = false;
    std::ostringstream os;
    os << "block with density " << u.min_density()
       << " <= 0: a nonempty piece can tie the empty piece at cost 0";
    r.violations.push_back(os.str());
  }
  // Structural spot check: every emptiness pattern at a few grid lengths
  // must demand exactly the empty pieces.
  for (int m = 2; m <= max_pieces; ++m) {
    for (int mask = 1; mask < (1 << m) - 1; ++mask) {
      std::vector<double> lengths(m, 0.0);
      int nonempty = 0;
      for (int j = 0; j < m; ++j)
        if (!(mask & (1 << j))) ++nonempty;
      if (nonempty == 0) continue;
      for (int j = 0; j < m; ++j)
        if (!(mask & (1 << j))) lengths[j] = 1.0 / nonempty;
      Partition x = validate_partition(lengths);
      std::vector<int> want;
      for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) want.push_back(j);
      std::vector<int> got = additive_cost_demand(u, x);
      if (got != want) {
        r.pass = false;
        std::ostringstream os;
        os << "pattern m=" << m << " mask=" << mask << ": demand is not exactly the empty pieces";
        r.violations.push_back(os.str());
      }
    }
  }
  return r;
}

}  // namespace fairslice
