#include "fairslice/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fairslice {

namespace {

using nlohmann::json;

const char* side_code(Side s) {
  switch (s) {
    case Side::Left: return "L";
    case Side::Right: return "R";
    default: return "B";
  }
}

Side side_from_code(const std::string& s) {
  if (s == "L") return Side::Left;
  if (s == "R") return Side::Right;
  if (s == "B") return Side::Both;
  throw InputError("unknown side label '" + s + "'");
}

json two_piece_to_json(const TwoPiecePreference& p) {
  json labels = json::array();
  for (Side s : p.labels) labels.push_back(side_code(s));
  return {{"kind", "two_piece"}, {"breakpoints", p.breakpoints}, {"labels", labels}};
}

json additive_to_json(const AdditivePiecewiseConstant& u, bool lazy) {
  json blocks = json::array();
  for (const auto& b : u.blocks)
    blocks.push_back({{"start", b.start}, {"end", b.end}, {"density", b.density}});
  return {{"kind", "additive_pwc"}, {"blocks", blocks}, {"mode", lazy ? "lazy" : "hungry"}};
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json players = json::array();
  for (const auto& p : inst.players)
    players.push_back(p.is_two_piece() ? two_piece_to_json(p.two_piece())
                                       : additive_to_json(p.additive(), p.lazy));
  json j = {{"players", players}};
  if (!inst.group_sizes.empty()) j["group_sizes"] = inst.group_sizes;
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  if (!j.is_object() || !j.contains("players") || !j["players"].is_array())
    throw InputError("instance must be an object with a 'players' array");
  try {
    for (const auto& pj : j["players"]) {
      std::string kind = pj.at("kind").get<std::string>();
      PlayerSpec spec;
      if (kind == "two_piece") {
        std::vector<double> bp = pj.at("breakpoints").get<std::vector<double>>();
        std::vector<Side> labels;
        for (const auto& l : pj.at("labels")) labels.push_back(side_from_code(l.get<std::string>()));
        spec.pref = TwoPiecePreference::make(std::move(bp), std::move(labels));
      } else if (kind == "additive_pwc") {
        std::vector<AdditivePiecewiseConstant::Block> blocks;
        for (const auto& bj : pj.at("blocks"))
          blocks.push_back({bj.at("start").get<double>(), bj.at("end").get<double>(),
                            bj.at("density").get<double>()});
        spec.pref = AdditivePiecewiseConstant::make(std::move(blocks));
        std::string mode = pj.value("mode", std::string("hungry"));
        if (mode != "hungry" && mode != "lazy") throw InputError("mode must be hungry or lazy");
        spec.lazy = mode == "lazy";
      } else {
        throw InputError("unknown player kind '" + kind + "'");
      }
      inst.players.push_back(std::move(spec));
    }
    if (j.contains("group_sizes")) inst.group_sizes = j["group_sizes"].get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid instance: ") + e.what());
  }
  if (!inst.group_sizes.empty()) {
    int sum = 0;
    for (int g : inst.group_sizes) {
      if (g < 0) throw InputError("group sizes must be nonnegative");
      sum += g;
    }
    if (sum != inst.n()) throw InputError("group sizes must sum to the player count");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write instance file '" + path + "'");
  out << to_stable_string(instance_to_json(inst)) << "\n";
}

json assignment_to_json(const Assignment& a) {
  return {{"lengths", a.partition.lengths}, {"cuts", a.partition.cuts()}, {"groups", a.groups}};
}

Assignment assignment_from_json(const json& j) {
  Assignment a;
  try {
    a.partition = validate_partition(j.at("lengths").get<std::vector<double>>());
    a.groups = j.at("groups").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed assignment: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid assignment: ") + e.what());
  }
  return a;
}

json transcript_entry_to_json(const TranscriptEntry& e) {
  json j = {{"player", e.query.player}, {"kind", to_string(e.query.kind)}};
  if (e.query.kind != QueryKind::FirstIndifference) j["point"] = e.query.point;
  if (std::holds_alternative<Side>(e.answer)) {
    j["answer"] = side_code(std::get<Side>(e.answer));
  } else {
    const auto& opt = std::get<std::optional<double>>(e.answer);
    if (opt)
      j["answer"] = *opt;
    else
      j["answer"] = nullptr;
  }
  if (e.is_virtual) j["virtual"] = true;
  return j;
}

void write_transcript_jsonl(const QueryTranscript& t, std::ostream& out) {
  for (const auto& e : t.entries) out << to_stable_string(transcript_entry_to_json(e)) << "\n";
}

namespace {

json transcript_to_json(const QueryTranscript& t) {
  json arr = json::array();
  for (const auto& e : t.entries) arr.push_back(transcript_entry_to_json(e));
  return arr;
}

}  // namespace

json protocol_report_to_json(const ProtocolReport& r) {
  return {{"assignment", assignment_to_json(r.assignment)},
          {"query_count", r.query_count},
          {"transcript", transcript_to_json(r.transcript)}};
}

json preferences_to_json(const std::vector<TwoPiecePreference>& prefs) {
  json players = json::array();
  for (const auto& p : prefs) players.push_back(two_piece_to_json(p));
  return {{"players", players}};
}

json duel_report_to_json(const DuelReport& r) {
  json envious = json::array();
  for (const auto& [player, group] : r.envious)
    envious.push_back({{"player", player}, {"group", group}});
  return {{"verdict", r.budget_exhausted ? "budget-exhausted" : "not-envy-free"},
          {"envy_free", r.envy_free},
          {"budget_exhausted", r.budget_exhausted},
          {"query_count", r.query_count},
          {"assignment", assignment_to_json(r.assignment)},
          {"envious", envious},
          {"replay_consistent", r.replay_consistent},
          {"completed_preferences", preferences_to_json(r.completed)},
          {"transcript", transcript_to_json(r.transcript)}};
}

json chore_solution_to_json(const ChoreSolution& s) {
  return {{"assignment", assignment_to_json(s.assignment)},
          {"exact", s.exact},
          {"transcript", transcript_to_json(s.transcript)}};
}

json collection_to_json(const PieceCollection& c) {
  return {{"cuts", c.cuts}, {"side", c.side}};
}

void write_duel_csv(const DuelReport& r, std::ostream& out) {
  out << "query_index,player,kind,point,answer,interval_count,intervals\n";
  int n = 0;
  for (const auto& e : r.transcript.entries) n = std::max(n, e.query.player + 1);
  AdversaryState replay(n);
  int idx = 0;
  for (const auto& e : r.transcript.entries) {
    Answer ans = replay.handle(e.query);
    std::ostringstream answer, intervals;
    if (std::holds_alternative<Side>(ans)) {
      answer << side_code(std::get<Side>(ans));
    } else {
      const auto& opt = std::get<std::optional<double>>(ans);
      if (opt)
        answer << *opt;
      else
        answer << "none";
    }
    const auto& known = replay.known_intervals();
    for (size_t k = 0; k < known.size(); ++k) {
      if (k) intervals << "|";
      intervals << known[k].first << ":" << known[k].second;
    }
    out << idx++ << "," << e.query.player << "," << to_string(e.query.kind) << ","
        << e.query.point << "," << answer.str() << "," << known.size() << ","
        << intervals.str() << "\n";
  }
}

void write_mixed_csv(const std::vector<AdditivePiecewiseConstant>& utils,
                     const MinCutResult& result, std::ostream& out) {
  out << "section,key,value\n";
  out << "search,configurations_checked," << result.configurations_checked << "\n";
  out << "search,found," << (result.collection ? 1 : 0) << "\n";
  if (result.collection) {
    const auto& c = *result.collection;
    out << "search,cut_count," << c.cut_count() << "\n";
    for (size_t k = 0; k < c.cuts.size(); ++k)
      out << "cut," << k << "," << c.cuts[k] << "\n";
    for (size_t i = 0; i < utils.size(); ++i) {
      out << "utility_0," << i << "," << c.utility(utils[i], 0) << "\n";
      out << "utility_1," << i << "," << c.utility(utils[i], 1) << "\n";
    }
    for (size_t i = 0; i < result.group_of.size(); ++i)
      out << "group," << i << "," << result.group_of[i] << "\n";
  }
}

std::string to_stable_string(const json& j) {
  // nlohmann::json keeps object keys sorted and prints shortest
  // round-trip doubles, so plain dump() is already deterministic.
  return j.dump();
}

}  // namespace fairslice
