#pragma once

#include <iosfwd>
#include <variant>

#include "fairslice/adversary.hpp"
#include "fairslice/chores.hpp"
#include "fairslice/core.hpp"
#include "fairslice/mixed.hpp"
#include "fairslice/protocols.hpp"

#include "json.hpp"

namespace fairslice {

/// Either representation a player can carry in an instance file.
struct PlayerSpec {
  std::variant<TwoPiecePreference, AdditivePiecewiseConstant> pref;
  bool lazy = false;  // additive only: lazy chore semantics

  bool is_two_piece() const { return pref.index() == 0; }
  const TwoPiecePreference& two_piece() const { return std::get<0>(pref); }
  const AdditivePiecewiseConstant& additive() const { return std::get<1>(pref); }
};

struct Instance {
  std::vector<PlayerSpec> players;
  std::vector<int> group_sizes;

  int n() const { return static_cast<int>(players.size()); }
};

/// Thrown on malformed input files; maps to CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

nlohmann::json assignment_to_json(const Assignment& a);
Assignment assignment_from_json(const nlohmann::json& j);

nlohmann::json transcript_entry_to_json(const TranscriptEntry& e);
/// One JSON object per line.
void write_transcript_jsonl(const QueryTranscript& t, std::ostream& out);

nlohmann::json protocol_report_to_json(const ProtocolReport& r);
nlohmann::json duel_report_to_json(const DuelReport& r);
nlohmann::json chore_solution_to_json(const ChoreSolution& s);
nlohmann::json preferences_to_json(const std::vector<TwoPiecePreference>& prefs);
nlohmann::json collection_to_json(const PieceCollection& c);

/// Known-interval evolution: one row per query, columns
/// query_index,player,kind,point,interval_count,intervals ("a:b|a:b").
void write_duel_csv(const DuelReport& r, std::ostream& out);

/// Per-cut-count search outcomes plus per-player utilities of the found
/// collection, if any.
void write_mixed_csv(const std::vector<AdditivePiecewiseConstant>& utils,
                     const MinCutResult& result, std::ostream& out);

/// Serializes deterministically: 12 significant digits, stable key order.
std::string to_stable_string(const nlohmann::json& j);

}  // namespace fairslice
