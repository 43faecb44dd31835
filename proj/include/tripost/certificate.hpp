#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

namespace tripost {

// Per-letter count difference (first word minus second word) for one pair,
// indexed by alphabet position.
using BalanceVector = std::vector<std::int64_t>;

// Every nonempty selection sums to a nonzero length difference.
struct LengthImbalance {
  std::vector<std::int64_t> differences;
  bool operator==(const LengthImbalance&) const = default;
};

// The zero vector is outside the convex hull of the balance vectors.
struct LetterImbalance {
  std::vector<BalanceVector> vectors;
  bool operator==(const LetterImbalance&) const = default;
};

// No pair is prefix-comparable, so nothing can start a match.
struct NoStarter {
  bool operator==(const NoStarter&) const = default;
};

// No pair is suffix-comparable, so nothing can end a match.
struct NoEnder {
  bool operator==(const NoEnder&) const = default;
};

// The reachable configuration graph was explored completely without pruning
// and contains no accepting configuration.
struct ClosedStateGraph {
  std::size_t states_explored = 0;
  std::size_t depth_reached = 0;
  bool operator==(const ClosedStateGraph&) const = default;
};

using Certificate = std::variant<LengthImbalance, LetterImbalance, NoStarter, NoEnder, ClosedStateGraph>;

enum class CertificateKind { LengthImbalance, LetterImbalance, NoStarter, NoEnder, ClosedStateGraph };

inline CertificateKind kind_of(const Certificate& c) noexcept {
  return static_cast<CertificateKind>(c.index());
}

inline std::string_view certificate_name(CertificateKind k) noexcept {
  switch (k) {
    case CertificateKind::LengthImbalance: return "LengthImbalance";
    case CertificateKind::LetterImbalance: return "LetterImbalance";
    case CertificateKind::NoStarter: return "NoStarter";
    case CertificateKind::NoEnder: return "NoEnder";
    case CertificateKind::ClosedStateGraph: return "ClosedStateGraph";
  }
  return "?";
}

inline std::string_view certificate_name(const Certificate& c) noexcept {
  return certificate_name(kind_of(c));
}

}  // namespace tripost
