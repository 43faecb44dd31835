#include "tripost/search.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

namespace tripost {

namespace {

// Extends each track by its word and drops the common prefix. Tracks stay
// alive only while every one of them is a prefix of the longest.
template <std::size_t N>
std::optional<std::array<Word, N>> advance(const std::array<const Word*, N>& tracks,
                                           const std::array<const Word*, N>& words) {
  std::array<Word, N> next;
  std::size_t longest = 0;
  for (std::size_t i = 0; i < N; ++i) {
    next[i].reserve(tracks[i]->size() + words[i]->size());
    next[i] = *tracks[i];
    next[i] += *words[i];
    if (next[i].size() > next[longest].size()) longest = i;
  }
  std::size_t shortest = next[longest].size();
  for (std::size_t i = 0; i < N; ++i) {
    if (next[longest].compare(0, next[i].size(), next[i]) != 0) return std::nullopt;
    shortest = std::min(shortest, next[i].size());
  }
  for (auto& w : next) w.erase(0, shortest);
  return next;
}

PairConfig from_tracks(Word first, Word second) {
  if (!first.empty()) return {Side::First, std::move(first)};
  if (second.empty()) return {};
  return {Side::Second, std::move(second)};
}

std::string key_of(const PairConfig& c) {
  std::string k;
  k.reserve(c.overhang.size() + 1);
  k += c.ahead == Side::First ? '1' : '2';
  k += c.overhang;
  return k;
}

std::string key_of(const TriConfig& c) {
  std::string k;
  k.reserve(c.top.size() + c.middle.size() + c.bottom.size() + 2);
  k += c.top;
  k += '\x01';
  k += c.middle;
  k += '\x01';
  k += c.bottom;
  return k;
}

std::size_t overhang_of(const PairConfig& c) { return c.overhang.size(); }
std::size_t overhang_of(const TriConfig& c) { return c.max_overhang(); }

void note_fired(std::vector<Bound>& fired, Bound b) {
  if (std::find(fired.begin(), fired.end(), b) == fired.end()) fired.push_back(b);
}

template <typename Config, typename Step>
SearchOutcome breadth_first(std::size_t n, const Config& start, const SearchBounds& bounds,
                            Step step, SearchTrace<Config>* trace) {
  bounds.check();

  SearchTrace<Config> local;
  SearchTrace<Config>& t = trace ? *trace : local;
  t.tree.nodes.clear();
  t.configs.clear();

  std::unordered_map<std::string, std::size_t> seen;
  SearchStats stats;
  std::vector<Bound> fired;

  t.tree.nodes.push_back({0, 0});
  t.configs.push_back(start);
  seen.emplace(key_of(start), 0);
  stats.states = 1;

  std::vector<std::size_t> frontier{0};
  std::vector<std::size_t> next;
  std::size_t depth = 0;
  while (!frontier.empty()) {
    if (depth == bounds.max_depth) {
      note_fired(fired, Bound::Depth);
      break;
    }
    next.clear();
    for (std::size_t u : frontier) {
      for (std::size_t i = 1; i <= n; ++i) {
        std::optional<Config> c = step(t.configs[u], i);
        if (!c) continue;
        ++stats.transitions;
        if (c->balanced()) {
          t.tree.nodes.push_back({u, i});
          t.configs.push_back(std::move(*c));
          stats.depth_reached = depth + 1;
          return Found{reconstruct(t.tree, t.tree.nodes.size() - 1), stats};
        }
        if (overhang_of(*c) > bounds.max_overhang) {
          note_fired(fired, Bound::Overhang);
          continue;
        }
        std::string key = key_of(*c);
        if (seen.contains(key)) continue;
        if (stats.states >= bounds.max_states) {
          note_fired(fired, Bound::States);
          continue;
        }
        const std::size_t id = t.tree.nodes.size();
        seen.emplace(std::move(key), id);
        t.tree.nodes.push_back({u, i});
        t.configs.push_back(std::move(*c));
        ++stats.states;
        next.push_back(id);
      }
    }
    ++depth;
    if (!next.empty()) stats.depth_reached = depth;
    frontier.swap(next);
  }

  if (fired.empty()) {
    return CertifiedNo{ClosedStateGraph{stats.states, stats.depth_reached}, stats};
  }
  return Unknown{fired.front(), fired, stats};
}

}  // namespace

std::size_t TriConfig::max_overhang() const noexcept {
  return std::max({top.size(), middle.size(), bottom.size()});
}

std::optional<PairConfig> pair_config_of(std::string_view first, std::string_view second) {
  if (!prefix_comparable(first, second)) return std::nullopt;
  const std::size_t common = std::min(first.size(), second.size());
  return from_tracks(Word(first.substr(common)), Word(second.substr(common)));
}

std::optional<TriConfig> tri_config_of(std::string_view top, std::string_view middle,
                                       std::string_view bottom) {
  const Word empty;
  const Word t(top), m(middle), b(bottom);
  auto r = advance<3>({&empty, &empty, &empty}, {&t, &m, &b});
  if (!r) return std::nullopt;
  return TriConfig{std::move((*r)[0]), std::move((*r)[1]), std::move((*r)[2])};
}

PairConfig TriConfig::top_middle() const { return *pair_config_of(top, middle); }
PairConfig TriConfig::top_bottom() const { return *pair_config_of(top, bottom); }

PairConfig TriConfig::pair(Game g) const {
  const auto [first, second] = rows_of(g);
  auto pick = [this](Row r) -> const Word& {
    return r == Row::Top ? top : (r == Row::Middle ? middle : bottom);
  };
  return *pair_config_of(pick(first), pick(second));
}

std::optional<PairConfig> step_pair(const PairConfig& from, const WordPair& pair) {
  const Word empty;
  const Word& first = from.ahead == Side::First ? from.overhang : empty;
  const Word& second = from.ahead == Side::Second ? from.overhang : empty;
  auto r = advance<2>({&first, &second}, {&pair.first, &pair.second});
  if (!r) return std::nullopt;
  return from_tracks(std::move((*r)[0]), std::move((*r)[1]));
}

std::optional<TriConfig> step_triple(const TriConfig& from, const Domino& domino) {
  auto r = advance<3>({&from.top, &from.middle, &from.bottom},
                      {&domino.top, &domino.middle, &domino.bottom});
  if (!r) return std::nullopt;
  return TriConfig{std::move((*r)[0]), std::move((*r)[1]), std::move((*r)[2])};
}

void SearchBounds::check() const {
  if (max_depth == 0 || max_overhang == 0 || max_states == 0) {
    throw Error(ErrorCode::InvalidBounds, "search bounds must all be positive");
  }
}

std::string_view bound_name(Bound b) noexcept {
  switch (b) {
    case Bound::Depth: return "depth";
    case Bound::Overhang: return "overhang";
    case Bound::States: return "states";
  }
  return "?";
}

MatchSeq reconstruct(const SearchTree& tree, std::size_t node) {
  MatchSeq out;
  while (node != 0) {
    const auto& n = tree.nodes.at(node);
    out.push_back(n.domino);
    node = n.parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

SearchOutcome search_pair_from(const PairSystem& system, const PairConfig& start,
                               const SearchBounds& bounds, SearchTrace<PairConfig>* trace) {
  require_valid(system);
  return breadth_first(
      system.size(), start, bounds,
      [&](const PairConfig& c, std::size_t i) { return step_pair(c, system.pairs[i - 1]); }, trace);
}

SearchOutcome search_triple_from(const TriSystem& system, const TriConfig& start,
                                 const SearchBounds& bounds, SearchTrace<TriConfig>* trace) {
  require_valid(system);
  return breadth_first(
      system.size(), start, bounds,
      [&](const TriConfig& c, std::size_t i) { return step_triple(c, system.dominoes[i - 1]); },
      trace);
}

SearchOutcome search_pair(const PairSystem& system, const SearchBounds& bounds,
                          SearchTrace<PairConfig>* trace) {
  return search_pair_from(system, PairConfig{}, bounds, trace);
}

SearchOutcome search_triple(const TriSystem& system, const SearchBounds& bounds,
                            SearchTrace<TriConfig>* trace) {
  return search_triple_from(system, TriConfig{}, bounds, trace);
}

}  // namespace tripost
