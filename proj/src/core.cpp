#include "tripost/core.hpp"

#include <algorithm>

namespace tripost {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyIndexSequence: return "EmptyIndexSequence";
    case ErrorCode::NotAPairGame: return "NotAPairGame";
    case ErrorCode::InvalidSystem: return "InvalidSystem";
    case ErrorCode::InvalidCut: return "InvalidCut";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::NothingToUndo: return "NothingToUndo";
    case ErrorCode::MoveLimit: return "MoveLimit";
  }
  return "Unknown";
}

namespace {

void check_index(std::size_t index, std::size_t n) {
  if (index < 1 || index > n) {
    throw Error(ErrorCode::IndexOutOfRange, "index out of range: " + std::to_string(index) +
                                                " (system has " + std::to_string(n) + " dominoes)");
  }
}

// Letters reserved by the instance file grammar.
bool usable_letter(char c) {
  return c > ' ' && c < 127 && c != '|' && c != '#';
}

void validate_alphabet(const Alphabet& alphabet, std::vector<std::string>& out) {
  if (alphabet.size() == 0) out.emplace_back("alphabet must be nonempty");
  const auto& letters = alphabet.letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!usable_letter(letters[i])) {
      out.push_back("alphabet letter at position " + std::to_string(i + 1) +
                    " is not a printable non-reserved character");
    }
    if (letters.find(letters[i]) != i) {
      out.push_back(std::string("duplicate alphabet letter '") + letters[i] + "'");
    }
  }
}

void validate_word(const Alphabet& alphabet, const Word& word, std::size_t index,
                   std::string_view row, std::vector<std::string>& out) {
  const std::string where = " (domino " + std::to_string(index) + ", " + std::string(row) + ")";
  if (word.empty()) out.push_back("empty word" + where);
  for (char c : word) {
    if (!alphabet.contains(c)) {
      out.push_back(std::string("letter not in alphabet: '") + c + "'" + where);
      break;
    }
  }
}

void throw_if_invalid(const std::vector<std::string>& violations) {
  if (violations.empty()) return;
  std::string msg = "invalid system: ";
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) msg += "; ";
    msg += violations[i];
  }
  throw Error(ErrorCode::InvalidSystem, msg);
}

}  // namespace

const Domino& TriSystem::at(std::size_t index) const {
  check_index(index, dominoes.size());
  return dominoes[index - 1];
}

const WordPair& PairSystem::at(std::size_t index) const {
  check_index(index, pairs.size());
  return pairs[index - 1];
}

bool is_pair_game(Game g) noexcept { return g != Game::TopMiddleBottom; }

std::pair<Row, Row> rows_of(Game g) {
  switch (g) {
    case Game::TopMiddle: return {Row::Top, Row::Middle};
    case Game::TopBottom: return {Row::Top, Row::Bottom};
    case Game::MiddleBottom: return {Row::Middle, Row::Bottom};
    case Game::TopMiddleBottom: break;
  }
  throw Error(ErrorCode::NotAPairGame, "tmb is not a pair game");
}

std::string_view game_name(Game g) noexcept {
  switch (g) {
    case Game::TopMiddleBottom: return "tmb";
    case Game::TopMiddle: return "tm";
    case Game::TopBottom: return "tb";
    case Game::MiddleBottom: return "mb";
  }
  return "?";
}

std::optional<Game> parse_game(std::string_view name) noexcept {
  for (Game g : kAllGames) {
    if (game_name(g) == name) return g;
  }
  return std::nullopt;
}

std::string_view row_name(Row r) noexcept {
  switch (r) {
    case Row::Top: return "top";
    case Row::Middle: return "middle";
    case Row::Bottom: return "bottom";
  }
  return "?";
}

std::string format_indices(std::span<const std::size_t> indices, char sep) {
  std::string out;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(indices[i]);
  }
  return out;
}

Word concat_row(const TriSystem& system, Row row, std::span<const std::size_t> indices) {
  Word out;
  for (std::size_t index : indices) out += system.at(index).row(row);
  return out;
}

bool verify_match(const TriSystem& system, std::span<const std::size_t> indices, Game game) {
  if (indices.empty()) {
    throw Error(ErrorCode::EmptyIndexSequence, "a match needs at least one index");
  }
  const Word top = concat_row(system, Row::Top, indices);
  const Word middle = concat_row(system, Row::Middle, indices);
  const Word bottom = concat_row(system, Row::Bottom, indices);
  switch (game) {
    case Game::TopMiddleBottom: return top == middle && middle == bottom;
    case Game::TopMiddle: return top == middle;
    case Game::TopBottom: return top == bottom;
    case Game::MiddleBottom: return middle == bottom;
  }
  return false;
}

PairSystem project(const TriSystem& system, Game game) {
  const auto [first, second] = rows_of(game);
  PairSystem out{system.alphabet, {}};
  out.pairs.reserve(system.size());
  for (const Domino& d : system.dominoes) out.pairs.push_back({d.row(first), d.row(second)});
  return out;
}

std::vector<std::string> validate(const TriSystem& system) {
  std::vector<std::string> out;
  validate_alphabet(system.alphabet, out);
  if (system.dominoes.empty()) out.emplace_back("n >= 1 required: system has no dominoes");
  for (std::size_t i = 0; i < system.dominoes.size(); ++i) {
    const Domino& d = system.dominoes[i];
    for (Row r : {Row::Top, Row::Middle, Row::Bottom}) {
      validate_word(system.alphabet, d.row(r), i + 1, row_name(r), out);
    }
  }
  return out;
}

std::vector<std::string> validate(const PairSystem& system) {
  std::vector<std::string> out;
  validate_alphabet(system.alphabet, out);
  if (system.pairs.empty()) out.emplace_back("n >= 1 required: system has no pairs");
  for (std::size_t i = 0; i < system.pairs.size(); ++i) {
    validate_word(system.alphabet, system.pairs[i].first, i + 1, "first", out);
    validate_word(system.alphabet, system.pairs[i].second, i + 1, "second", out);
  }
  return out;
}

void require_valid(const TriSystem& system) { throw_if_invalid(validate(system)); }
void require_valid(const PairSystem& system) { throw_if_invalid(validate(system)); }

bool prefix_comparable(std::string_view a, std::string_view b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  return a.substr(0, n) == b.substr(0, n);
}

bool suffix_comparable(std::string_view a, std::string_view b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  return a.substr(a.size() - n) == b.substr(b.size() - n);
}

}  // namespace tripost
