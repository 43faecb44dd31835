#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tripost/certificate.hpp"
#include "tripost/core.hpp"
#include "tripost/search.hpp"

namespace tripost {

struct DecidedYes {
  MatchSeq match;
};

struct DecidedNo {
  Certificate certificate;
  // Pair game the certificate was issued for, when it differs from the game
  // being reported (pair certificates refute the threefold game).
  std::optional<Game> certified_game;
};

struct Undecided {
  Bound reason;
  std::vector<Bound> fired;
};

enum class StatusKind { Yes, No, Unknown };

// Filter and Search mark results a procedure produced for the game itself;
// Closure marks results carried over from another game of the same instance.
enum class Origin { Filter, Search, Closure };

std::string_view status_name(StatusKind k) noexcept;
std::string_view origin_name(Origin o) noexcept;

struct GameStatus {
  std::variant<DecidedYes, DecidedNo, Undecided> value;
  Origin origin = Origin::Search;
  std::optional<Game> source;  // game whose result was propagated, for Closure

  StatusKind kind() const noexcept { return static_cast<StatusKind>(value.index()); }
  bool decided() const noexcept { return kind() != StatusKind::Unknown; }
};

struct GameResult {
  GameStatus status;
  // What the game's own pipeline produced, kept when closure replaced it.
  std::optional<GameStatus> raw;
  std::optional<SearchStats> search;  // absent when a filter decided first
};

struct AnalysisReport {
  std::array<GameResult, 4> games;  // in kAllGames order
  bool conjecture_witnessed = false;
  std::size_t states_explored = 0;
  std::size_t transitions = 0;

  const GameResult& operator[](Game g) const { return games[static_cast<std::size_t>(g)]; }
  GameResult& operator[](Game g) { return games[static_cast<std::size_t>(g)]; }
};

AnalysisReport analyze(const TriSystem& system, const SearchBounds& bounds);

using InstanceStream = std::function<std::optional<TriSystem>()>;

InstanceStream stream_of(std::vector<TriSystem> systems);

struct SweepRecord {
  std::size_t index = 0;
  TriSystem system;
  std::optional<AnalysisReport> report;
  std::string error;  // set when the instance failed validation
};

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t errors = 0;
  std::size_t witnessed = 0;
  // [game][status kind] over the final statuses.
  std::array<std::array<std::size_t, 3>, 4> per_game{};
  // Final DecidedNo certificates across all games, by kind name.
  std::map<std::string, std::size_t> certificates;

  // Fraction of analyzed (non-error) instances with conjecture_witnessed.
  double witnessed_fraction() const noexcept;
  void add(const SweepRecord& record);
  bool operator==(const SweepSummary&) const = default;
};

// Analyzes every instance; `sink` sees records in stream order. Instances may
// be analyzed on up to `threads` workers.
SweepSummary sweep(const InstanceStream& source, const SearchBounds& bounds,
                   const std::function<void(const SweepRecord&)>& sink, unsigned threads = 1);

}  // namespace tripost
