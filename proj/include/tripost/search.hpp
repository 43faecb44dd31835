#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "tripost/certificate.hpp"
#include "tripost/core.hpp"

namespace tripost {

enum class Side { First, Second };

// Two partial products with their common prefix dropped: the leading side
// runs ahead by `overhang`. An empty overhang means the products are equal;
// `ahead` is then always First.
struct PairConfig {
  Side ahead = Side::First;
  Word overhang;

  bool balanced() const noexcept { return overhang.empty(); }
  bool operator==(const PairConfig&) const = default;
};

// Three partial products with the common prefix of all three dropped. Every
// residual is a prefix of the longest one and at least one residual is empty.
struct TriConfig {
  Word top;
  Word middle;
  Word bottom;

  bool balanced() const noexcept { return top.empty() && middle.empty() && bottom.empty(); }
  std::size_t max_overhang() const noexcept;
  // Signed overhangs relative to the top row.
  PairConfig top_middle() const;
  PairConfig top_bottom() const;
  // Pair configuration of the two rows a pair game compares.
  PairConfig pair(Game g) const;

  bool operator==(const TriConfig&) const = default;
};

// Configuration of two arbitrary words; absent when they are not
// prefix-comparable.
std::optional<PairConfig> pair_config_of(std::string_view first, std::string_view second);
std::optional<TriConfig> tri_config_of(std::string_view top, std::string_view middle,
                                       std::string_view bottom);

// Appends one pair/domino; absent means the products stopped being
// prefix-comparable. The default-constructed configuration is the start.
std::optional<PairConfig> step_pair(const PairConfig& from, const WordPair& pair);
std::optional<TriConfig> step_triple(const TriConfig& from, const Domino& domino);

struct SearchBounds {
  std::size_t max_depth = 64;
  std::size_t max_overhang = 64;
  std::size_t max_states = 1'000'000;

  // Throws InvalidBounds unless every bound is positive.
  void check() const;
};

enum class Bound { Depth, Overhang, States };
std::string_view bound_name(Bound b) noexcept;

struct SearchStats {
  std::size_t states = 0;       // distinct stored configurations, start included
  std::size_t transitions = 0;  // successful single-domino extensions
  std::size_t depth_reached = 0;
};

struct Found {
  MatchSeq match;
  SearchStats stats;
};

struct CertifiedNo {
  Certificate certificate;
  SearchStats stats;
};

struct Unknown {
  Bound reason;               // first bound that fired
  std::vector<Bound> fired;   // every bound that fired, in firing order
  SearchStats stats;
};

using SearchOutcome = std::variant<Found, CertifiedNo, Unknown>;

// BFS parent pointers. Node 0 is the start configuration.
struct SearchTree {
  struct Node {
    std::size_t parent;
    std::size_t domino;  // 1-based index of the domino on the edge from parent
  };
  std::vector<Node> nodes;
};

MatchSeq reconstruct(const SearchTree& tree, std::size_t node);

// Every stored configuration alongside the tree that reached it; node i of
// the tree corresponds to configs[i].
template <typename Config>
struct SearchTrace {
  SearchTree tree;
  std::vector<Config> configs;
};

SearchOutcome search_pair(const PairSystem& system, const SearchBounds& bounds,
                          SearchTrace<PairConfig>* trace = nullptr);
SearchOutcome search_triple(const TriSystem& system, const SearchBounds& bounds,
                            SearchTrace<TriConfig>* trace = nullptr);

// Shortest nonempty continuation from `start` that balances the products.
SearchOutcome search_pair_from(const PairSystem& system, const PairConfig& start,
                               const SearchBounds& bounds, SearchTrace<PairConfig>* trace = nullptr);
SearchOutcome search_triple_from(const TriSystem& system, const TriConfig& start,
                                 const SearchBounds& bounds, SearchTrace<TriConfig>* trace = nullptr);

}  // namespace tripost
