#pragma once

#include "mx3/fourier.hpp"
#include "mx3/instance.hpp"

#include <cstdint>

namespace mx3 {

inline constexpr std::size_t kMaxOracleVars = 26;

struct OracleResult {
  double optimum = 0.0;
  // Lexicographically first optimal assignment (+1 before -1, block 1 first).
  Assignment assignment;
  std::uint64_t optimal_count = 0;
};

// Exhaustive maximization over all 2^(M+N2+N3) assignments by Gray-code
// walk with incremental re-evaluation and exact fixed-point weight sums.
// `jobs` = 0 uses the hardware concurrency. Throws CapError beyond
// kMaxOracleVars variables.
OracleResult brute_force(const Instance& inst, unsigned jobs = 0);

// True iff predicate_fourier(pred) reproduces the indicator at all 8 points.
bool exhaustive_poly_check(Predicate3 pred);
// Same check for a caller-supplied expansion over y1, y2, y3.
bool exhaustive_poly_check(Predicate3 pred, const MultilinearPoly& poly);

// Max of evaluate over `trials` uniform assignments (trial t is the same
// assignment random_baseline draws for t).
double best_random(const Instance& inst, std::uint64_t trials, std::uint64_t seed);

}  // namespace mx3
