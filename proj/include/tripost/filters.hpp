#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "tripost/certificate.hpp"
#include "tripost/core.hpp"

namespace tripost {

// Work counters for the filters; lets callers bound the cost of a run.
struct FilterCost {
  std::size_t supports_examined = 0;
  std::size_t arithmetic_ops = 0;
};

std::optional<Certificate> length_filter(const PairSystem& system);

// Decides whether 0 lies in the convex hull of the balance vectors with exact
// rational arithmetic, enumerating supports of at most |alphabet| + 1 vectors.
std::optional<Certificate> balance_filter(const PairSystem& system, FilterCost* cost = nullptr);

std::optional<Certificate> boundary_filter(const PairSystem& system);

// length, balance, boundary; first certificate wins.
std::optional<Certificate> filter_pair(const PairSystem& system, FilterCost* cost = nullptr);

// Runs filter_pair on the tm, tb, mb projections in that order. A certificate
// for any projection also refutes the threefold game.
std::optional<std::pair<Game, Certificate>> filter_triple(const TriSystem& system,
                                                          FilterCost* cost = nullptr);

std::vector<BalanceVector> balance_vectors(const PairSystem& system);

}  // namespace tripost
