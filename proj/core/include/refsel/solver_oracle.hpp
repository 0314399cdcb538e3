#pragma once

#include <refsel/instance.hpp>

#include <cstdint>
#include <vector>

namespace refsel {

inline constexpr std::uint64_t kOracleSubsetLimit = 5'000'000;

/// Number of subsets of size 1..capacity of an n-element candidate set (saturating).
std::uint64_t count_subsets(std::size_t n, int capacity);

/// Enumerates every subset of at most `capacity` candidates. Ties are broken
/// towards fewer references, then the lexicographically smallest sequence.
Selection exhaustive_solve(const Instance &inst, const std::vector<ViewTick> &candidates,
                           int capacity);
Selection exhaustive_solve(const Scenario &s);

/// Ordered recursion over growing left sets: each step either defers the
/// current range (some tick may still get a better right reference later) or
/// closes it against the references chosen so far.
Selection treesearch_solve(const Instance &inst, int capacity);
Selection treesearch_solve(const Scenario &s);

} // namespace refsel
