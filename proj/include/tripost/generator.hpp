#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tripost/analyzer.hpp"
#include "tripost/core.hpp"

namespace tripost {

inline constexpr std::size_t kMaxGeneratedAlphabet = 26;

struct EnumParams {
  std::size_t max_dominoes = 1;
  std::size_t max_word_len = 1;
  std::size_t alphabet_size = 1;

  // Throws InvalidParams unless all fields are positive and the alphabet fits
  // in the lowercase letters.
  void check() const;
};

using Seed = std::uint64_t;

// The first `size` lowercase letters.
Alphabet first_letters(std::size_t size);

// Deterministic across platforms: std::mt19937_64 (fully specified by the
// standard) with rejection sampling for bounded draws. Standard library
// distributions are deliberately not used; their output is
// implementation-defined.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  std::size_t uniform(std::size_t lo, std::size_t hi);

 private:
  std::mt19937_64 engine_;
};

struct Canonical {
  TriSystem system;
  // index_map[i - 1] is the canonical 1-based position of original domino i.
  std::vector<std::size_t> index_map;
};

// Lexicographically least system (dominoes compared as (top, middle, bottom)
// word triples) reachable by renaming letters within the alphabet and
// reordering dominoes. Used letters are therefore numbered by first
// occurrence and dominoes come out sorted; the result is idempotent.
Canonical canonicalize_with_map(const TriSystem& system);
TriSystem canonicalize(const TriSystem& system);

// Every canonical system over the first `alphabet_size` letters with
// 1..max_dominoes pairwise distinct dominoes and word lengths in
// [1, max_word_len], sorted by their domino lists.
std::vector<TriSystem> enumerate(const EnumParams& params);
InstanceStream enumerate_stream(const EnumParams& params);

TriSystem random_instance(Seed seed, const EnumParams& params);

struct PlantedInstance {
  TriSystem system;
  MatchSeq match;
};

// Cuts `word` three times into segments of the given lengths; domino i holds
// the i-th segment of each cut. All three cuts need the same piece count.
PlantedInstance plant_from_cuts(const Word& word, std::span<const std::size_t> top_lengths,
                                std::span<const std::size_t> middle_lengths,
                                std::span<const std::size_t> bottom_lengths, Alphabet alphabet);

PlantedInstance plant_match(Seed seed, std::size_t word_len, std::size_t pieces,
                            std::size_t alphabet_size);

}  // namespace tripost
