#pragma once

#include "fairslice/query.hpp"

namespace fairslice {

struct ProtocolReport {
  Assignment assignment;
  QueryTranscript transcript;
  int query_count = 0;
};

/// One First-indifference-point query per player; cuts at the minimum
/// answer and gives the left piece to the (lowest-index) minimizer.
/// Output is envy-free for any hungry players. Group sizes (1, n-1).
ProtocolReport singleton_first(OracleSession& session);

/// Mirror: Previous-indifference-point at 1 per player, cut at the
/// maximum answer, singleton group on the right. Group sizes (n-1, 1).
ProtocolReport singleton_last(OracleSession& session);

/// Mark protocol for monotone preferences: each player's mark is their
/// unique indifference point; cut at the midpoint of the k1-th and
/// (k1+1)-st marks. Rejects non-monotone sessions.
ProtocolReport monotone_marks(TwoPieceSession& session, int k1);

struct EnvyReport {
  bool envy_free = true;
  std::vector<std::pair<int, int>> violations;  // (player, group)
};

EnvyReport verify_envy_free(const Assignment& a, const std::vector<DemandFn>& demands);

}  // namespace fairslice
