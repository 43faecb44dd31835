#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "tripost/core.hpp"

namespace fixtures {

// Four dominoes over {a, b}; [1,2,3] is a threefold match spelling ababbb and
// [3] wins top-middle with the word b.
inline tripost::TriSystem sys1() {
  return {tripost::Alphabet("ab"),
          {{"ab", "a", "ab"}, {"abb", "babb", "ab"}, {"b", "b", "bb"}, {"bba", "baaa", "ba"}}};
}

inline tripost::TriSystem single(std::string t, std::string m, std::string b, std::string alphabet) {
  return {tripost::Alphabet(std::move(alphabet)), {{std::move(t), std::move(m), std::move(b)}}};
}

inline tripost::PairSystem pairs(std::vector<tripost::WordPair> ps, std::string alphabet = "ab") {
  return {tripost::Alphabet(std::move(alphabet)), std::move(ps)};
}

// Test-only random systems for property checks.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t pick(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }

  std::string word(std::size_t max_len, const std::string& letters) {
    std::string w(pick(1, max_len), ' ');
    for (char& c : w) c = letters[pick(0, letters.size() - 1)];
    return w;
  }

  tripost::TriSystem system(std::size_t max_n, std::size_t max_len, const std::string& letters) {
    tripost::TriSystem s{tripost::Alphabet(letters), {}};
    const std::size_t n = pick(1, max_n);
    for (std::size_t i = 0; i < n; ++i) {
      s.dominoes.push_back({word(max_len, letters), word(max_len, letters), word(max_len, letters)});
    }
    return s;
  }

  std::vector<std::size_t> indices(std::size_t n, std::size_t min_len, std::size_t max_len) {
    std::vector<std::size_t> out(pick(min_len, max_len));
    for (auto& i : out) i = pick(1, n);
    return out;
  }
};

}  // namespace fixtures
