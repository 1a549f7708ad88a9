#include "fairslice/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fairslice {

AdversaryState::AdversaryState(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("need at least one player");
  known_ = {{0.0, 0.0}, {1.0, 1.0}};
  runs_.resize(n);
  for (auto& rs : runs_) {
    rs.push_back({0.0, 0.0, Side::Right});
    rs.push_back({1.0, 1.0, Side::Left});
  }
}

bool AdversaryState::covered(double x) const {
  for (const auto& [lo, hi] : known_)
    if (lo <= x && x <= hi) return true;
  return false;
}

void AdversaryState::add_run(int player, double lo, double hi, Side side) {
  auto& rs = runs_[player];
  Run r{lo, hi, side};
  auto it = std::upper_bound(rs.begin(), rs.end(), r,
                             [](const Run& a, const Run& b) { return a.lo < b.lo; });
  it = rs.insert(it, r);
  if (it != rs.begin()) {
    auto prev = it - 1;
    if (prev->hi > it->lo) throw InvariantError("overlapping label runs");
    if (prev->hi == it->lo && prev->side == it->side) {
      prev->hi = it->hi;
      it = rs.erase(it) - 1;
    }
  }
  if (it + 1 != rs.end()) {
    auto next = it + 1;
    if (it->hi > next->lo) throw InvariantError("overlapping label runs");
    if (it->hi == next->lo && it->side == next->side) {
      it->hi = next->hi;
      rs.erase(next);
    }
  }
}

void AdversaryState::label_portion(int queried, double a, double b, double x, bool reversed) {
  Side outer = reversed ? Side::Left : Side::Right;
  Side inner = reversed ? Side::Right : Side::Left;
  for (int i = 0; i < n_; ++i)
    if (i != queried) add_run(i, a, b, outer);
  if (a == b) {
    // Degenerate portion (rounding collapse): no room for a switch pair.
    add_run(queried, a, b, outer);
    return;
  }
  // Switch-point placement: at the query point itself when it falls
  // strictly inside the portion (so the query is answerable as Both
  // right there), thirds otherwise.
  double ap, bp;
  if (a < x && x < b) {
    ap = x;
    bp = x + (b - x) / 3.0;
    if (bp <= ap) bp = std::nextafter(ap, b);
  } else {
    ap = a + (b - a) / 3.0;
    bp = a + 2.0 * (b - a) / 3.0;
    if (ap <= a) ap = std::nextafter(a, b);
    if (bp <= ap) bp = std::nextafter(ap, b);
  }
  if (!(a < ap && ap < bp && bp < b)) {
    // Rounding squeezed the switch pair onto a portion edge; a Both
    // label there would leak onto a gap flank. Skip the switch.
    add_run(queried, a, b, outer);
    return;
  }
  add_run(queried, a, ap, outer);
  add_run(queried, ap, bp, inner);
  add_run(queried, bp, b, outer);
}

Side AdversaryState::label_at(int player, double x) const {
  const auto& rs = runs_[player];
  auto it = std::upper_bound(rs.begin(), rs.end(), x,
                             [](double v, const Run& r) { return v < r.lo; });
  bool left = false, right = false;
  for (int back = 1; back <= 2; ++back) {
    if (it - rs.begin() < back) break;
    const Run& r = *(it - back);
    if (r.hi >= x) {
      (r.side == Side::Left ? left : right) = true;
    }
  }
  if (left && right) return Side::Both;
  if (left) return Side::Left;
  if (right) return Side::Right;
  throw InvariantError("label requested at an unknown point");
}

std::optional<double> AdversaryState::next_both(int player, double x) const {
  const auto& rs = runs_[player];
  for (size_t t = 0; t + 1 < rs.size(); ++t) {
    if (rs[t].hi < x) continue;
    if (rs[t].hi == rs[t + 1].lo && rs[t].side != rs[t + 1].side && rs[t].hi >= x)
      return rs[t].hi;
  }
  return std::nullopt;
}

std::optional<double> AdversaryState::previous_both(int player, double x) const {
  const auto& rs = runs_[player];
  std::optional<double> best;
  for (size_t t = 0; t + 1 < rs.size(); ++t) {
    if (rs[t].hi > x) break;
    if (rs[t].hi == rs[t + 1].lo && rs[t].side != rs[t + 1].side) best = rs[t].hi;
  }
  return best;
}

Answer AdversaryState::handle(const Query& q) {
  double x = q.kind == QueryKind::FirstIndifference ? 0.0 : q.point;
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("query point outside [0,1]");
  if (q.player < 0 || q.player >= n_) throw std::invalid_argument("player index out of range");

  // Grow the known intervals. A query inside an existing interval
  // extends it into both adjacent gaps (one when it holds 0 or 1),
  // halving each; a query in a gap spawns a new interval halving the
  // gaps on both sides.
  size_t idx = known_.size();
  for (size_t k = 0; k < known_.size(); ++k) {
    if (known_[k].first <= x && x <= known_[k].second) {
      idx = k;
      break;
    }
  }
  if (idx < known_.size()) {
    bool reversed = (idx + 1 == known_.size());
    if (known_[idx].first > 0.0) {
      double newlo = (known_[idx - 1].second + known_[idx].first) / 2.0;
      // Halving stops once the midpoint rounds onto a gap endpoint;
      // merging intervals would cover the cake, which the construction
      // forbids.
      if (newlo > known_[idx - 1].second && newlo < known_[idx].first &&
          std::nextafter(known_[idx - 1].second, 1.0) < newlo) {
        label_portion(q.player, newlo, known_[idx].first, x, reversed);
        known_[idx].first = newlo;
      }
    }
    if (known_[idx].second < 1.0) {
      double newhi = (known_[idx].second + known_[idx + 1].first) / 2.0;
      if (newhi > known_[idx].second && newhi < known_[idx + 1].first &&
          std::nextafter(newhi, 1.0) < known_[idx + 1].first) {
        label_portion(q.player, known_[idx].second, newhi, x, reversed);
        known_[idx].second = newhi;
      }
    }
  } else {
    size_t g = 0;
    while (g < known_.size() && known_[g].second < x) ++g;
    // x lies strictly between intervals g-1 and g
    double lo = (known_[g - 1].second + x) / 2.0;
    double hi = (x + known_[g].first) / 2.0;
    if (!(lo > known_[g - 1].second)) lo = x;
    if (!(hi < known_[g].first)) hi = x;
    known_.insert(known_.begin() + static_cast<long>(g), {lo, hi});
    label_portion(q.player, lo, hi, x, /*reversed=*/false);
  }

  // Answer from the stored labels only.
  switch (q.kind) {
    case QueryKind::Evaluate:
      return label_at(q.player, x);
    case QueryKind::FirstIndifference:
    case QueryKind::NextIndifference: {
      if (label_at(q.player, x) == Side::Both) return std::optional<double>(x);
      auto y = next_both(q.player, x);
      if (!y && known_.back().first > x)
        throw InvariantError("no next indifference stored although x is not in the rightmost interval");
      if (y) {
        // [x, *y] must already be fully known, or a later query could
        // invalidate the answer.
        bool ok = false;
        for (const auto& [lo, hi] : known_)
          if (lo <= x && *y <= hi) ok = true;
        if (!ok) throw InvariantError("next-indifference answer spans an unknown gap");
      }
      return y;
    }
    case QueryKind::PreviousIndifference: {
      if (label_at(q.player, x) == Side::Both) return std::optional<double>(x);
      auto y = previous_both(q.player, x);
      if (!y && known_.front().second < x)
        throw InvariantError("no previous indifference stored although x is not in the leftmost interval");
      if (y) {
        bool ok = false;
        for (const auto& [lo, hi] : known_)
          if (lo <= *y && x <= hi) ok = true;
        if (!ok) throw InvariantError("previous-indifference answer spans an unknown gap");
      }
      return y;
    }
  }
  throw std::invalid_argument("unknown query kind");
}

std::vector<TwoPiecePreference> AdversaryState::complete() const {
  std::vector<TwoPiecePreference> out;
  out.reserve(static_cast<size_t>(n_));
  for (int p = 0; p < n_; ++p) {
    std::vector<Run> full = runs_[p];
    for (size_t g = 0; g + 1 < known_.size(); ++g) {
      double e = known_[g].second;
      double s = known_[g + 1].first;
      if (label_at(p, e) == Side::Both || label_at(p, s) == Side::Both)
        throw InvariantError("gap flank carries a switch point");
      if (g + 2 == known_.size()) {
        // Gap left of the rightmost interval: switch right-to-left at z
        // so the completion stays continuous into the left-labeled
        // rightmost interval.
        double z = (e + s) / 2.0;
        if (z <= e) z = std::nextafter(e, s);
        if (z >= s) z = std::nextafter(s, e);
        if (!(e < z && z < s)) throw InvariantError("special gap has no interior point");
        if (label_at(p, e) != Side::Right || label_at(p, s) != Side::Left)
          throw InvariantError("special-gap flank labels are not right/left");
        full.push_back({e, z, Side::Right});
        full.push_back({z, s, Side::Left});
      } else {
        if (label_at(p, e) != Side::Right || label_at(p, s) != Side::Right)
          throw InvariantError("plain-gap flank labels are not right-only");
        full.push_back({e, s, Side::Right});
      }
    }
    std::sort(full.begin(), full.end(), [](const Run& a, const Run& b) {
      return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi;
    });
    // Merge same-side neighbours, drop degenerate runs (a zero-width
    // switch cannot survive in a canonical preference; the final replay
    // check catches the pathological case where an answer relied on
    // one), and check that coverage of [0,1] is seamless.
    std::vector<Run> merged;
    for (const Run& r : full) {
      if (r.lo == r.hi) continue;
      if (!merged.empty()) {
        if (merged.back().hi != r.lo) throw InvariantError("completion leaves a hole");
        if (merged.back().side == r.side) {
          merged.back().hi = r.hi;
          continue;
        }
      }
      merged.push_back(r);
    }
    if (merged.front().lo != 0.0 || merged.back().hi != 1.0)
      throw InvariantError("completion does not span [0,1]");
    std::vector<double> bp{0.0};
    std::vector<Side> lb;
    for (const Run& r : merged) {
      bp.push_back(r.hi);
      lb.push_back(r.side);
    }
    TwoPiecePreference pref = TwoPiecePreference::make(std::move(bp), std::move(lb));
    if (!pref.hungry()) throw InvariantError("completed preference is not hungry");
    out.push_back(std::move(pref));
  }
  return out;
}

void AdversaryState::check_invariants() const {
  // (b) intervals sorted, disjoint, with strictly positive gaps; the
  // cake is never fully covered.
  if (known_.front().first != 0.0 || known_.back().second != 1.0)
    throw InvariantError("endpoints 0 and 1 must stay known");
  for (size_t k = 0; k + 1 < known_.size(); ++k) {
    if (!(known_[k].second < known_[k + 1].first))
      throw InvariantError("known intervals touch or overlap: the cake would be covered");
  }
  for (const auto& [lo, hi] : known_)
    if (lo > hi) throw InvariantError("inverted known interval");

  // (a) every known point carries a label for every player.
  for (int p = 0; p < n_; ++p) {
    for (const auto& [lo, hi] : known_) {
      double probe[3] = {lo, (lo + hi) / 2.0, hi};
      for (double x : probe) label_at(p, x);  // throws if unknown
    }
  }

  // (c) at every known point at least n-1 players share a single side.
  // Piecewise structure: checking run endpoints and midpoints of the
  // elementary segments covers all cases.
  for (const auto& [lo, hi] : known_) {
    std::vector<double> points{lo, hi};
    for (int p = 0; p < n_; ++p) {
      for (const Run& r : runs_[p]) {
        if (r.lo >= lo && r.lo <= hi) points.push_back(r.lo);
        if (r.hi >= lo && r.hi <= hi) points.push_back(r.hi);
      }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<double> samples = points;
    for (size_t t = 0; t + 1 < points.size(); ++t)
      samples.push_back((points[t] + points[t + 1]) / 2.0);
    for (double x : samples) {
      int nl = 0, nr = 0;
      for (int p = 0; p < n_; ++p) {
        Side s = label_at(p, x);
        if (s == Side::Left) ++nl;
        if (s == Side::Right) ++nr;
      }
      if (std::max(nl, nr) < n_ - 1) {
        std::ostringstream os;
        os << "condition (c) fails at " << x << ": " << nl << " left-only, " << nr
           << " right-only of " << n_;
        throw InvariantError(os.str());
      }
    }
  }
}

AdversarySession::AdversarySession(int n, int max_queries)
    : state_(n), max_queries_(max_queries) {}

Answer AdversarySession::answer(const Query& q) {
  if (transcript_.size() >= max_queries_) throw BudgetExhausted{};
  return state_.handle(q);
}

DuelReport finalize(AdversarySession& session, double cut, const std::vector<int>& group1,
                    int k1, int k2) {
  AdversaryState& state = session.state();
  int n = state.players();
  if (k1 + k2 != n) throw std::invalid_argument("group sizes must sum to n");
  if (std::min(k1, k2) < 2)
    throw std::invalid_argument("finalize requires min(k1,k2) >= 2; the singleton case has a protocol");
  if (static_cast<int>(group1.size()) != k1) throw std::invalid_argument("group 1 has the wrong size");
  if (cut < 0.0 || cut > 1.0) throw std::invalid_argument("cut outside [0,1]");

  DuelReport r;
  if (!state.covered(cut)) {
    // The adversary volunteers an Evaluate for player 0 at the output
    // cut, so the cut lands in a known interval.
    Query vq{QueryKind::Evaluate, 0, cut};
    r.transcript = session.transcript();
    r.transcript.record(vq, state.handle(vq), /*is_virtual=*/true);
  } else {
    r.transcript = session.transcript();
  }
  r.query_count = r.transcript.size();
  r.completed = state.complete();

  std::vector<bool> in1(n, false);
  for (int i : group1) in1.at(static_cast<size_t>(i)) = true;
  r.assignment.partition = Partition{{cut, 1.0 - cut}};
  r.assignment.groups.resize(2);
  for (int i = 0; i < n; ++i) (in1[i] ? r.assignment.groups[0] : r.assignment.groups[1]).push_back(i);

  std::vector<DemandFn> demands;
  for (const auto& p : r.completed) demands.push_back(make_two_piece_demand(p));
  EnvyReport ef = verify_envy_free(r.assignment, demands);
  if (ef.envy_free)
    throw InvariantError("adversary construction produced an envy-free output");
  r.envy_free = false;
  r.envious = ef.violations;
  r.replay_consistent = replay_consistent(r.transcript, r.completed);
  return r;
}

DuelReport duel(const DuelProtocol& protocol, int n, int k1, int k2, int max_queries) {
  if (k1 + k2 != n) throw std::invalid_argument("group sizes must sum to n");
  if (std::min(k1, k2) < 2)
    throw std::invalid_argument("duel requires min(k1,k2) >= 2");
  AdversarySession session(n, max_queries);
  ProtocolOutput out;
  try {
    out = protocol(session, n, k1);
  } catch (const AdversarySession::BudgetExhausted&) {
    DuelReport r;
    r.transcript = session.transcript();
    r.query_count = r.transcript.size();
    r.budget_exhausted = true;
    r.completed = session.state().complete();
    r.replay_consistent = replay_consistent(r.transcript, r.completed);
    return r;
  }
  return finalize(session, out.cut, out.group1, k1, k2);
}

double PiecewiseLinear::operator()(double x) const {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it != xs.end() && *it == x) return ys[static_cast<size_t>(it - xs.begin())];
  if (it == xs.begin() || it == xs.end()) throw std::invalid_argument("point outside domain");
  size_t k = static_cast<size_t>(it - xs.begin());
  double t = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
  return ys[k - 1] + t * (ys[k] - ys[k - 1]);
}

PiecewiseLinear additive_representation(const TwoPiecePreference& p) {
  if (!p.hungry()) throw std::invalid_argument("additive representation requires a hungry preference");
  PiecewiseLinear u;
  u.xs.push_back(0.0);
  u.ys.push_back(0.0);
  for (size_t k = 0; k < p.labels.size(); ++k) {
    double a = p.breakpoints[k], b = p.breakpoints[k + 1];
    double mid = (a + b) / 2.0;
    // Segments a few ulps wide have no representable interior; the
    // midpoint node would collide with an endpoint and break lookup.
    if (mid > a && mid < b) {
      u.xs.push_back(mid);
      u.ys.push_back(p.labels[k] == Side::Right ? 0.25 : 0.75);
    }
    u.xs.push_back(b);
    u.ys.push_back(k + 1 == p.labels.size() ? 1.0 : 0.5);
  }
  return u;
}

Side induced_side(const PiecewiseLinear& u, double x) {
  double v = u(x);
  if (v == 0.5) return Side::Both;
  return v > 0.5 ? Side::Left : Side::Right;
}

DuelProtocol marks_protocol() {
  return [](OracleSession& s, int n, int k1) {
    std::vector<double> marks(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) marks[static_cast<size_t>(i)] = s.first(i);
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return marks[static_cast<size_t>(a)] < marks[static_cast<size_t>(b)]; });
    double cut = (marks[static_cast<size_t>(order[static_cast<size_t>(k1 - 1)])] +
                  marks[static_cast<size_t>(order[static_cast<size_t>(k1)])]) / 2.0;
    return ProtocolOutput{cut, {order.begin(), order.begin() + k1}};
  };
}

DuelProtocol binary_search_protocol(int steps) {
  return [steps](OracleSession& s, int n, int k1) {
    std::vector<double> est(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      double lo = 0.0, hi = 1.0;
      for (int t = 0; t < steps; ++t) {
        double mid = (lo + hi) / 2.0;
        Side side = s.evaluate(i, mid);
        if (side == Side::Right)
          lo = mid;
        else
          hi = mid;
      }
      est[static_cast<size_t>(i)] = (lo + hi) / 2.0;
    }
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return est[static_cast<size_t>(a)] < est[static_cast<size_t>(b)]; });
    double cut = (est[static_cast<size_t>(order[static_cast<size_t>(k1 - 1)])] +
                  est[static_cast<size_t>(order[static_cast<size_t>(k1)])]) / 2.0;
    return ProtocolOutput{cut, {order.begin(), order.begin() + k1}};
  };
}

DuelProtocol random_prober_protocol(std::uint64_t seed, int probes) {
  return [seed, probes](OracleSession& s, int n, int k1) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> pick_player(0, n - 1);
    std::uniform_int_distribution<int> pick_kind(0, 2);
    for (int t = 0; t < probes; ++t) {
      int i = pick_player(rng);
      double x = unit(rng);
      switch (pick_kind(rng)) {
        case 0: s.evaluate(i, x); break;
        case 1: s.next(i, x); break;
        default: s.previous(i, x); break;
      }
    }
    double cut = unit(rng);
    std::vector<int> ids(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ids[static_cast<size_t>(i)] = i;
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<int> group1(ids.begin(), ids.begin() + k1);
    std::sort(group1.begin(), group1.end());
    return ProtocolOutput{cut, group1};
  };
}

DuelProtocol zero_query_protocol(double cut) {
  return [cut](OracleSession&, int, int k1) {
    std::vector<int> group1(static_cast<size_t>(k1));
    for (int i = 0; i < k1; ++i) group1[static_cast<size_t>(i)] = i;
    return ProtocolOutput{cut, group1};
  };
}

DuelProtocol builtin_protocol(const std::string& name, std::uint64_t seed) {
  if (name == "marks") return marks_protocol();
  if (name == "binary-search") return binary_search_protocol();
  if (name == "random-prober") return random_prober_protocol(seed);
  if (name == "zero-query") return zero_query_protocol();
  throw std::invalid_argument("unknown protocol: " + name);
}

}  // namespace fairslice
