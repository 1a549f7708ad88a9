#include "fairslice/query.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fairslice {

std::string to_string(QueryKind k) {
  switch (k) {
    case QueryKind::Evaluate: return "evaluate";
    case QueryKind::NextIndifference: return "next_indifference";
    case QueryKind::PreviousIndifference: return "previous_indifference";
    case QueryKind::FirstIndifference: return "first_indifference";
  }
  return "?";
}

void QueryTranscript::record(const Query& q, const Answer& a, bool is_virtual) {
  entries.push_back({q, a, is_virtual});
}

int QueryTranscript::count(int player) const {
  int c = 0;
  for (const auto& e : entries)
    if (e.query.player == player) ++c;
  return c;
}

int QueryTranscript::count(int player, QueryKind kind) const {
  int c = 0;
  for (const auto& e : entries)
    if (e.query.player == player && e.query.kind == kind) ++c;
  return c;
}

std::optional<double> next_indifference(const TwoPiecePreference& p, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("point outside [0,1]");
  auto sw = p.switches();
  auto it = std::lower_bound(sw.begin(), sw.end(), x);
  if (it == sw.end()) return std::nullopt;
  return *it;
}

std::optional<double> previous_indifference(const TwoPiecePreference& p, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("point outside [0,1]");
  auto sw = p.switches();
  auto it = std::upper_bound(sw.begin(), sw.end(), x);
  if (it == sw.begin()) return std::nullopt;
  return *(it - 1);
}

double first_indifference(const TwoPiecePreference& p) {
  if (!p.hungry()) throw std::invalid_argument("first_indifference requires a hungry preference");
  // Hungry preferences switch at least once, so the answer exists.
  return *next_indifference(p, 0.0);
}

double next_left_preferred(const TwoPiecePreference& p, double x) {
  Side s = p.eval(x);
  if (s == Side::Left || s == Side::Both) return x;
  auto y = next_indifference(p, x);
  if (!y) throw std::invalid_argument("no left-preferred point at or after x (not hungry?)");
  return *y;
}

Side OracleSession::evaluate(int player, double x) {
  Query q{QueryKind::Evaluate, player, x};
  Answer a = answer(q);
  transcript_.record(q, a);
  return std::get<Side>(a);
}

std::optional<double> OracleSession::next(int player, double x) {
  Query q{QueryKind::NextIndifference, player, x};
  Answer a = answer(q);
  transcript_.record(q, a);
  return std::get<std::optional<double>>(a);
}

std::optional<double> OracleSession::previous(int player, double x) {
  Query q{QueryKind::PreviousIndifference, player, x};
  Answer a = answer(q);
  transcript_.record(q, a);
  return std::get<std::optional<double>>(a);
}

double OracleSession::first(int player) {
  Query q{QueryKind::FirstIndifference, player, 0.0};
  Answer a = answer(q);
  transcript_.record(q, a);
  auto y = std::get<std::optional<double>>(a);
  if (!y) throw InvariantError("first indifference point missing for hungry player");
  return *y;
}

TwoPieceSession::TwoPieceSession(std::vector<TwoPiecePreference> prefs)
    : prefs_(std::move(prefs)) {}

Answer TwoPieceSession::answer(const Query& q) {
  const TwoPiecePreference& p = prefs_.at(q.player);
  switch (q.kind) {
    case QueryKind::Evaluate:
      return p.eval(q.point);
    case QueryKind::NextIndifference:
      return next_indifference(p, q.point);
    case QueryKind::PreviousIndifference:
      return previous_indifference(p, q.point);
    case QueryKind::FirstIndifference:
      return std::optional<double>(first_indifference(p));
  }
  throw std::invalid_argument("unknown query kind");
}

bool replay_consistent(const QueryTranscript& t, const std::vector<TwoPiecePreference>& prefs,
                       std::string* first_mismatch) {
  for (size_t k = 0; k < t.entries.size(); ++k) {
    const auto& e = t.entries[k];
    const TwoPiecePreference& p = prefs.at(e.query.player);
    Answer now;
    switch (e.query.kind) {
      case QueryKind::Evaluate: now = p.eval(e.query.point); break;
      case QueryKind::NextIndifference: now = next_indifference(p, e.query.point); break;
      case QueryKind::PreviousIndifference: now = previous_indifference(p, e.query.point); break;
      case QueryKind::FirstIndifference:
        now = std::optional<double>(first_indifference(p));
        break;
    }
    if (now != e.answer) {
      if (first_mismatch) {
        std::ostringstream os;
        os << "entry " << k << " (" << to_string(e.query.kind) << " player " << e.query.player
           << " at " << e.query.point << ") answer changed on replay";
        *first_mismatch = os.str();
      }
      return false;
    }
  }
  return true;
}

}  // namespace fairslice
