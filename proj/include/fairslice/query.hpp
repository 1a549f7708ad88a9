#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>

#include "fairslice/core.hpp"

namespace fairslice {

enum class QueryKind { Evaluate, NextIndifference, PreviousIndifference, FirstIndifference };

std::string to_string(QueryKind k);

struct Query {
  QueryKind kind;
  int player;
  double point = 0.0;  // 0 for FirstIndifference
};

/// Either a side (Evaluate) or an optional point (indifference queries).
using Answer = std::variant<Side, std::optional<double>>;

struct TranscriptEntry {
  Query query;
  Answer answer;
  bool is_virtual = false;  // adversary's voluntary query at the output cut
};

struct QueryTranscript {
  std::vector<TranscriptEntry> entries;

  void record(const Query& q, const Answer& a, bool is_virtual = false);
  int size() const { return static_cast<int>(entries.size()); }
  int count(int player) const;
  int count(int player, QueryKind kind) const;
};

// Pure oracle operations over a two-piece preference.

/// Smallest switch point >= x, if any.
std::optional<double> next_indifference(const TwoPiecePreference& p, double x);

/// Largest switch point <= x, if any.
std::optional<double> previous_indifference(const TwoPiecePreference& p, double x);

/// Smallest indifference point of a hungry preference; always exists and
/// lies strictly inside (0,1).
double first_indifference(const TwoPiecePreference& p);

/// Smallest y >= x at which the left piece is preferred: x itself when
/// Left is already preferred there, otherwise the next switch point.
double next_left_preferred(const TwoPiecePreference& p, double x);

/// Query interface protocols run against. Implementations answer and
/// record; protocols never see the underlying representation.
class OracleSession {
 public:
  virtual ~OracleSession() = default;

  Side evaluate(int player, double x);
  std::optional<double> next(int player, double x);
  std::optional<double> previous(int player, double x);
  double first(int player);

  virtual int players() const = 0;
  const QueryTranscript& transcript() const { return transcript_; }

 protected:
  virtual Answer answer(const Query& q) = 0;
  QueryTranscript transcript_;
};

/// Session backed by explicit two-piece preferences.
class TwoPieceSession : public OracleSession {
 public:
  explicit TwoPieceSession(std::vector<TwoPiecePreference> prefs);

  int players() const override { return static_cast<int>(prefs_.size()); }
  const std::vector<TwoPiecePreference>& preferences() const { return prefs_; }
  bool monotone(int player) const { return prefs_[player].monotone(); }

 protected:
  Answer answer(const Query& q) override;

 private:
  std::vector<TwoPiecePreference> prefs_;
};

/// Replays a transcript against explicit preferences and reports whether
/// every recorded answer is reproduced.
bool replay_consistent(const QueryTranscript& t, const std::vector<TwoPiecePreference>& prefs,
                       std::string* first_mismatch = nullptr);

}  // namespace fairslice
