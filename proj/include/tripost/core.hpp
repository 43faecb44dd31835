#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tripost {

enum class ErrorCode {
  IndexOutOfRange,
  EmptyIndexSequence,
  NotAPairGame,
  InvalidSystem,
  InvalidCut,
  InvalidBounds,
  InvalidParams,
  Syntax,
  UnknownSession,
  NothingToUndo,
  MoveLimit,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

using Word = std::string;

// Letters are single printable ASCII characters, kept in declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::string letters) : letters_(std::move(letters)) {}

  const std::string& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool contains(char c) const noexcept { return letters_.find(c) != std::string::npos; }
  // Position of `c` in declaration order; npos when absent.
  std::size_t index_of(char c) const noexcept { return letters_.find(c); }

  auto operator<=>(const Alphabet&) const = default;

 private:
  std::string letters_;
};

enum class Row { Top, Middle, Bottom };

struct Domino {
  Word top;
  Word middle;
  Word bottom;

  const Word& row(Row r) const noexcept {
    switch (r) {
      case Row::Top: return top;
      case Row::Middle: return middle;
      case Row::Bottom: return bottom;
    }
    return top;
  }

  auto operator<=>(const Domino&) const = default;
};

struct TriSystem {
  Alphabet alphabet;
  std::vector<Domino> dominoes;

  std::size_t size() const noexcept { return dominoes.size(); }
  // 1-based access.
  const Domino& at(std::size_t index) const;

  auto operator<=>(const TriSystem&) const = default;
};

struct WordPair {
  Word first;
  Word second;

  auto operator<=>(const WordPair&) const = default;
};

struct PairSystem {
  Alphabet alphabet;
  std::vector<WordPair> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  const WordPair& at(std::size_t index) const;

  auto operator<=>(const PairSystem&) const = default;
};

enum class Game { TopMiddleBottom, TopMiddle, TopBottom, MiddleBottom };

inline constexpr std::array<Game, 4> kAllGames = {Game::TopMiddleBottom, Game::TopMiddle,
                                                  Game::TopBottom, Game::MiddleBottom};
inline constexpr std::array<Game, 3> kPairGames = {Game::TopMiddle, Game::TopBottom,
                                                   Game::MiddleBottom};

bool is_pair_game(Game g) noexcept;
// The two rows a pair game compares. Throws NotAPairGame for TopMiddleBottom.
std::pair<Row, Row> rows_of(Game g);
// Short names used on every external surface: tmb, tm, tb, mb.
std::string_view game_name(Game g) noexcept;
std::optional<Game> parse_game(std::string_view name) noexcept;
std::string_view row_name(Row r) noexcept;

// 1-based domino indices.
using MatchSeq = std::vector<std::size_t>;

std::string format_indices(std::span<const std::size_t> indices, char sep = ',');

Word concat_row(const TriSystem& system, Row row, std::span<const std::size_t> indices);

bool verify_match(const TriSystem& system, std::span<const std::size_t> indices, Game game);

PairSystem project(const TriSystem& system, Game game);

// Every violated invariant, in a stable order; empty means valid.
std::vector<std::string> validate(const TriSystem& system);
std::vector<std::string> validate(const PairSystem& system);

// Throws InvalidSystem carrying the joined violations.
void require_valid(const TriSystem& system);
void require_valid(const PairSystem& system);

bool prefix_comparable(std::string_view a, std::string_view b) noexcept;
bool suffix_comparable(std::string_view a, std::string_view b) noexcept;

}  // namespace tripost
