#include "tripost/generator.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

namespace tripost {

namespace {

// Letter renaming built up in first-occurrence order.
struct Relabel {
  std::array<char, 256> to{};
  std::size_t assigned = 0;

  Word apply(const Word& w, const std::string& targets) {
    Word out = w;
    for (char& c : out) {
      auto& slot = to[static_cast<unsigned char>(c)];
      if (slot == 0) {
        if (assigned == targets.size()) {
          throw Error(ErrorCode::InvalidSystem, "letter not in alphabet");
        }
        slot = targets[assigned++];
      }
      c = slot;
    }
    return out;
  }

  Domino apply(const Domino& d, const std::string& targets) {
    Domino out;
    out.top = apply(d.top, targets);
    out.middle = apply(d.middle, targets);
    out.bottom = apply(d.bottom, targets);
    return out;
  }
};

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const TriSystem& s) : system_(s), taken_(s.size(), false) {}

  void run() {
    Relabel start;
    descend(start);
  }

  const std::vector<Domino>& best() const { return best_; }
  const std::vector<std::size_t>& order() const { return best_order_; }

 private:
  void descend(const Relabel& relabel) {
    const std::size_t depth = prefix_.size();
    if (depth == system_.size()) {
      if (best_.empty() || prefix_ < best_) {
        best_ = prefix_;
        best_order_ = order_;
      }
      return;
    }

    const std::string& targets = system_.alphabet.letters();
    std::vector<std::pair<Domino, Relabel>> images(system_.size());
    std::optional<Domino> least;
    for (std::size_t i = 0; i < system_.size(); ++i) {
      if (taken_[i]) continue;
      Relabel r = relabel;
      images[i] = {r.apply(system_.dominoes[i], targets), r};
      if (!least || images[i].first < *least) least = images[i].first;
    }

    auto beaten = [&] {
      return !best_.empty() && std::equal(prefix_.begin(), prefix_.end(), best_.begin()) &&
             best_[depth] < *least;
    };
    if (beaten()) return;

    std::vector<const Domino*> tried;
    for (std::size_t i = 0; i < system_.size(); ++i) {
      if (taken_[i] || images[i].first != *least) continue;
      const Domino& original = system_.dominoes[i];
      if (std::any_of(tried.begin(), tried.end(), [&](const Domino* d) { return *d == original; })) {
        continue;
      }
      // An earlier branch may have improved best_.
      if (beaten()) return;
      tried.push_back(&original);
      taken_[i] = true;
      prefix_.push_back(images[i].first);
      order_.push_back(i);
      descend(images[i].second);
      order_.pop_back();
      prefix_.pop_back();
      taken_[i] = false;
    }
  }

  const TriSystem& system_;
  std::vector<bool> taken_;
  std::vector<Domino> prefix_;
  std::vector<std::size_t> order_;
  std::vector<Domino> best_;
  std::vector<std::size_t> best_order_;
};

// Appends every word over `letters` with length in [1, max_len], ordered
// lexicographically.
void all_words(const std::string& letters, std::size_t max_len, Word& prefix, std::vector<Word>& out) {
  if (!prefix.empty()) out.push_back(prefix);
  if (prefix.size() == max_len) return;
  for (char c : letters) {
    prefix.push_back(c);
    all_words(letters, max_len, prefix, out);
    prefix.pop_back();
  }
}

void choose(const std::vector<Domino>& pool, std::size_t start, std::size_t left,
            std::vector<Domino>& chosen, const Alphabet& alphabet, std::vector<TriSystem>& out) {
  if (left == 0) {
    TriSystem s{alphabet, chosen};
    if (canonicalize(s) == s) out.push_back(std::move(s));
    return;
  }
  for (std::size_t i = start; i + left <= pool.size(); ++i) {
    chosen.push_back(pool[i]);
    choose(pool, i + 1, left - 1, chosen, alphabet, out);
    chosen.pop_back();
  }
}

Word random_word(Rng& rng, std::size_t len, const std::string& letters) {
  Word w(len, ' ');
  for (char& c : w) c = letters[rng.uniform(0, letters.size() - 1)];
  return w;
}

// Segment lengths of a uniformly random cut of `len` letters into `pieces`
// nonempty parts.
std::vector<std::size_t> random_cut(Rng& rng, std::size_t len, std::size_t pieces) {
  std::vector<std::size_t> points(len - 1);
  std::iota(points.begin(), points.end(), 1);
  for (std::size_t i = 0; i + 1 < pieces; ++i) {
    std::swap(points[i], points[rng.uniform(i, points.size() - 1)]);
  }
  points.resize(pieces - 1);
  std::sort(points.begin(), points.end());
  std::vector<std::size_t> lengths;
  std::size_t prev = 0;
  for (std::size_t p : points) {
    lengths.push_back(p - prev);
    prev = p;
  }
  lengths.push_back(len - prev);
  return lengths;
}

}  // namespace

void EnumParams::check() const {
  if (max_dominoes == 0 || max_word_len == 0 || alphabet_size == 0) {
    throw Error(ErrorCode::InvalidParams, "generator parameters must all be positive");
  }
  if (alphabet_size > kMaxGeneratedAlphabet) {
    throw Error(ErrorCode::InvalidParams, "alphabet size must be at most 26");
  }
}

Alphabet first_letters(std::size_t size) {
  std::string letters;
  for (std::size_t i = 0; i < size; ++i) letters.push_back(static_cast<char>('a' + i));
  return Alphabet(letters);
}

std::size_t Rng::uniform(std::size_t lo, std::size_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return lo + engine_();  // full 64-bit range
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % range + 1) % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x > limit);
  return lo + static_cast<std::size_t>(x % range);
}

Canonical canonicalize_with_map(const TriSystem& system) {
  Canonical out;
  out.system.alphabet = system.alphabet;
  if (system.dominoes.empty()) return out;

  CanonicalSearch search(system);
  search.run();
  out.system.dominoes = search.best();
  out.index_map.resize(system.size());
  for (std::size_t pos = 0; pos < search.order().size(); ++pos) {
    out.index_map[search.order()[pos]] = pos + 1;
  }
  return out;
}

TriSystem canonicalize(const TriSystem& system) { return canonicalize_with_map(system).system; }

std::vector<TriSystem> enumerate(const EnumParams& params) {
  params.check();
  const Alphabet alphabet = first_letters(params.alphabet_size);
  std::vector<Word> words;
  Word scratch;
  all_words(alphabet.letters(), params.max_word_len, scratch, words);
  std::sort(words.begin(), words.end());

  std::vector<Domino> pool;
  pool.reserve(words.size() * words.size() * words.size());
  for (const Word& t : words) {
    for (const Word& m : words) {
      for (const Word& b : words) pool.push_back({t, m, b});
    }
  }

  std::vector<TriSystem> out;
  std::vector<Domino> chosen;
  for (std::size_t n = 1; n <= params.max_dominoes && n <= pool.size(); ++n) {
    choose(pool, 0, n, chosen, alphabet, out);
  }
  std::sort(out.begin(), out.end(),
            [](const TriSystem& a, const TriSystem& b) { return a.dominoes < b.dominoes; });
  return out;
}

InstanceStream enumerate_stream(const EnumParams& params) { return stream_of(enumerate(params)); }

TriSystem random_instance(Seed seed, const EnumParams& params) {
  params.check();
  Rng rng(seed);
  TriSystem s{first_letters(params.alphabet_size), {}};
  const std::string& letters = s.alphabet.letters();
  const std::size_t n = rng.uniform(1, params.max_dominoes);
  for (std::size_t i = 0; i < n; ++i) {
    Domino d;
    for (Word* w : {&d.top, &d.middle, &d.bottom}) {
      *w = random_word(rng, rng.uniform(1, params.max_word_len), letters);
    }
    s.dominoes.push_back(std::move(d));
  }
  return s;
}

PlantedInstance plant_from_cuts(const Word& word, std::span<const std::size_t> top_lengths,
                                std::span<const std::size_t> middle_lengths,
                                std::span<const std::size_t> bottom_lengths, Alphabet alphabet) {
  const std::size_t pieces = top_lengths.size();
  if (pieces == 0 || middle_lengths.size() != pieces || bottom_lengths.size() != pieces) {
    throw Error(ErrorCode::InvalidCut, "all three cuts need the same nonzero number of pieces");
  }
  auto segments = [&](std::span<const std::size_t> lengths) {
    std::vector<Word> out;
    std::size_t pos = 0;
    for (std::size_t len : lengths) {
      if (len == 0 || pos + len > word.size()) {
        throw Error(ErrorCode::InvalidCut, "cut does not split the word into nonempty segments");
      }
      out.push_back(word.substr(pos, len));
      pos += len;
    }
    if (pos != word.size()) throw Error(ErrorCode::InvalidCut, "cut does not cover the word");
    return out;
  };
  const auto top = segments(top_lengths);
  const auto middle = segments(middle_lengths);
  const auto bottom = segments(bottom_lengths);

  PlantedInstance out{{std::move(alphabet), {}}, {}};
  for (std::size_t i = 0; i < pieces; ++i) {
    out.system.dominoes.push_back({top[i], middle[i], bottom[i]});
    out.match.push_back(i + 1);
  }
  return out;
}

PlantedInstance plant_match(Seed seed, std::size_t word_len, std::size_t pieces,
                            std::size_t alphabet_size) {
  if (word_len == 0 || pieces == 0 || pieces > word_len) {
    throw Error(ErrorCode::InvalidCut, "need 1 <= pieces <= word length");
  }
  EnumParams{1, 1, alphabet_size}.check();
  Rng rng(seed);
  const Alphabet alphabet = first_letters(alphabet_size);
  const Word word = random_word(rng, word_len, alphabet.letters());
  const auto top = random_cut(rng, word_len, pieces);
  const auto middle = random_cut(rng, word_len, pieces);
  const auto bottom = random_cut(rng, word_len, pieces);
  return plant_from_cuts(word, top, middle, bottom, alphabet);
}

}  // namespace tripost
