#pragma once

#include <functional>

#include "fairslice/protocols.hpp"

namespace fairslice {

/// State of the impossibility adversary: a growing family of disjoint
/// closed "known intervals" with per-player side labels fixed on every
/// known point. Outside the known intervals nothing is committed yet.
///
/// The construction maintains, after every query:
///   (a) the answer is determined by the stored labels,
///   (b) the known intervals do not cover the whole cake,
///   (c) at every known point, at least n-1 players share a single side.
class AdversaryState {
 public:
  explicit AdversaryState(int n);

  int players() const { return n_; }

  /// Processes one query: grows the known intervals (halving adjacent
  /// gaps), fixes labels on the new portions, and answers from state.
  Answer handle(const Query& q);

  bool covered(double x) const;

  /// Stored label at a known point.
  Side label_at(int player, double x) const;

  /// Consistent completion: fills every unknown gap with right-only
  /// preferences, except the gap adjacent to the rightmost known
  /// interval, which switches right-to-left at its midpoint.
  std::vector<TwoPiecePreference> complete() const;

  const std::vector<std::pair<double, double>>& known_intervals() const { return known_; }

  /// Asserts conditions (a)/(b)/(c); throws InvariantError on breach.
  void check_invariants() const;

 private:
  struct Run {
    double lo, hi;
    Side side;
  };

  void add_run(int player, double lo, double hi, Side side);
  void label_portion(int queried, double a, double b, double x, bool reversed);
  std::optional<double> next_both(int player, double x) const;
  std::optional<double> previous_both(int player, double x) const;

  int n_;
  std::vector<std::pair<double, double>> known_;  // sorted, disjoint, gaps > 0
  std::vector<std::vector<Run>> runs_;            // per player, sorted; adjacent
                                                  // different-side runs meet at a Both point
};

/// A duel protocol sees only a query session and must output a single
/// cut plus the members of group 1.
struct ProtocolOutput {
  double cut;
  std::vector<int> group1;
};
using DuelProtocol = std::function<ProtocolOutput(OracleSession&, int n, int k1)>;

struct DuelReport {
  QueryTranscript transcript;
  Assignment assignment;
  bool envy_free = false;  // always false when the duel completes
  std::vector<std::pair<int, int>> envious;  // (player, assigned group)
  std::vector<TwoPiecePreference> completed;
  bool replay_consistent = false;
  bool budget_exhausted = false;
  int query_count = 0;
};

/// Session adapter exposing the adversary through the query interface.
class AdversarySession : public OracleSession {
 public:
  AdversarySession(int n, int max_queries);
  int players() const override { return state_.players(); }
  AdversaryState& state() { return state_; }

  struct BudgetExhausted {};

 protected:
  Answer answer(const Query& q) override;

 private:
  AdversaryState state_;
  int max_queries_;
};

/// Seals a finished run: issues the virtual query at an uncovered output
/// cut, completes the preferences, and certifies that the output is not
/// envy-free. Requires min(k1, k2) >= 2.
DuelReport finalize(AdversarySession& session, double cut, const std::vector<int>& group1,
                    int k1, int k2);

/// Full Theorem-2 duel: run a protocol against a fresh adversary.
DuelReport duel(const DuelProtocol& protocol, int n, int k1, int k2, int max_queries);

/// Piecewise-linear U with U(0)=0, U(1)=1 crossing 1/2 exactly at the
/// switch points, < 1/2 inside right intervals and > 1/2 inside left
/// intervals. The induced demand (left iff U(x) >= 1/2) equals p.
struct PiecewiseLinear {
  std::vector<double> xs;
  std::vector<double> ys;
  double operator()(double x) const;
};

PiecewiseLinear additive_representation(const TwoPiecePreference& p);

/// Demand induced by an additive representation.
Side induced_side(const PiecewiseLinear& u, double x);

// Built-in protocols for duels (all go through the query interface only).
DuelProtocol marks_protocol();
DuelProtocol binary_search_protocol(int steps = 20);
DuelProtocol random_prober_protocol(std::uint64_t seed, int probes = 50);
DuelProtocol zero_query_protocol(double cut = 0.5);

/// Named lookup for the CLI ("marks", "binary-search", "random-prober",
/// "zero-query").
DuelProtocol builtin_protocol(const std::string& name, std::uint64_t seed = 0);

}  // namespace fairslice
