#include "tripost/filters.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace tripost {

namespace {

using Rational = boost::multiprecision::cpp_rational;

bool all_zero(const BalanceVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

// Solves sum_j c_j * vectors[support_j] = 0, sum_j c_j = 1. Returns true when
// the system has a unique solution and that solution is nonnegative.
bool convex_zero_on_support(const std::vector<BalanceVector>& vectors,
                            const std::vector<std::size_t>& support, std::size_t dim,
                            FilterCost* cost) {
  const std::size_t rows = dim + 1;
  const std::size_t cols = support.size();
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols + 1));
  for (std::size_t j = 0; j < cols; ++j) {
    for (std::size_t i = 0; i < dim; ++i) m[i][j] = vectors[support[j]][i];
    m[dim][j] = 1;
  }
  m[dim][cols] = 1;

  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    // Dependent columns: a smaller support already covers this case.
    if (pivot == rows) return false;
    std::swap(m[pivot], m[rank]);
    const Rational p = m[rank][c];
    for (std::size_t k = c; k <= cols; ++k) m[rank][k] /= p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= cols; ++k) m[r][k] -= f * m[rank][k];
      if (cost) cost->arithmetic_ops += cols + 1 - c;
    }
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r) {
    if (m[r][cols] != 0) return false;
  }
  for (std::size_t j = 0; j < cols; ++j) {
    if (m[j][cols] < 0) return false;
  }
  return true;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<BalanceVector> balance_vectors(const PairSystem& system) {
  const Alphabet& alphabet = system.alphabet;
  std::vector<BalanceVector> out;
  out.reserve(system.size());
  for (const WordPair& p : system.pairs) {
    BalanceVector v(alphabet.size(), 0);
    for (char c : p.first) ++v[alphabet.index_of(c)];
    for (char c : p.second) --v[alphabet.index_of(c)];
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Certificate> length_filter(const PairSystem& system) {
  std::vector<std::int64_t> d;
  d.reserve(system.size());
  for (const WordPair& p : system.pairs) {
    d.push_back(static_cast<std::int64_t>(p.first.size()) - static_cast<std::int64_t>(p.second.size()));
  }
  const bool all_pos = std::all_of(d.begin(), d.end(), [](auto x) { return x > 0; });
  const bool all_neg = std::all_of(d.begin(), d.end(), [](auto x) { return x < 0; });
  if (!d.empty() && (all_pos || all_neg)) return LengthImbalance{std::move(d)};
  return std::nullopt;
}

std::optional<Certificate> balance_filter(const PairSystem& system, FilterCost* cost) {
  const std::vector<BalanceVector> raw = balance_vectors(system);
  if (raw.empty()) return std::nullopt;

  std::vector<BalanceVector> distinct = raw;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (std::any_of(distinct.begin(), distinct.end(), all_zero)) return std::nullopt;

  const std::size_t dim = system.alphabet.size();
  const std::size_t n = distinct.size();
  const std::size_t max_support = std::min(n, dim + 1);
  for (std::size_t k = 1; k <= max_support; ++k) {
    std::vector<std::size_t> support(k);
    for (std::size_t i = 0; i < k; ++i) support[i] = i;
    do {
      if (cost) ++cost->supports_examined;
      if (convex_zero_on_support(distinct, support, dim, cost)) return std::nullopt;
    } while (next_combination(support, n));
  }
  return LetterImbalance{raw};
}

std::optional<Certificate> boundary_filter(const PairSystem& system) {
  const auto& ps = system.pairs;
  if (std::none_of(ps.begin(), ps.end(),
                   [](const WordPair& p) { return prefix_comparable(p.first, p.second); })) {
    return NoStarter{};
  }
  if (std::none_of(ps.begin(), ps.end(),
                   [](const WordPair& p) { return suffix_comparable(p.first, p.second); })) {
    return NoEnder{};
  }
  return std::nullopt;
}

std::optional<Certificate> filter_pair(const PairSystem& system, FilterCost* cost) {
  if (auto c = length_filter(system)) return c;
  if (auto c = balance_filter(system, cost)) return c;
  return boundary_filter(system);
}

std::optional<std::pair<Game, Certificate>> filter_triple(const TriSystem& system, FilterCost* cost) {
  for (Game g : kPairGames) {
    if (auto c = filter_pair(project(system, g), cost)) return std::pair{g, std::move(*c)};
  }
  return std::nullopt;
}

}  // namespace tripost
