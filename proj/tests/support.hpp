#pragma once

// Test-only oracles and generators. Nothing here calls into the code paths
// it is used to check.

#include "mx3/instance.hpp"
#include "mx3/rng.hpp"
#include "mx3/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace mx3::testing {

// Random instance with arbitrary predicates, signs and dyadic weights.
inline Instance random_test_instance(BlockSizes sizes, std::size_t m, std::uint64_t seed,
                                     bool xor_only = false) {
  Rng rng(seed);
  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < m; ++i) {
    Constraint c;
    for (int b = 0; b < 3; ++b) {
      c.lits[static_cast<std::size_t>(b)] =
          Literal{b + 1, static_cast<std::uint32_t>(rng.below(sizes[static_cast<std::size_t>(b)]) + 1),
                  static_cast<Sign>(rng.sign())};
    }
    c.weight = static_cast<double>(rng.below(8) + 1) / 4.0;
    c.pred = xor_only ? (rng.sign() > 0 ? kXorPredicate : kXorComplement)
                      : Predicate3{static_cast<std::uint8_t>(rng.below(256))};
    cons.push_back(c);
  }
  return Instance(sizes, std::move(cons));
}

// Assignment number `code` of a (M, N2, N3) instance, bit per variable.
inline Assignment assignment_from_bits(const BlockSizes& sizes, std::uint64_t code) {
  Assignment a = Assignment::all_plus(sizes);
  std::size_t bit = 0;
  for (auto& block : a.values) {
    for (auto& v : block) v = ((code >> bit++) & 1U) ? Sign{-1} : Sign{1};
  }
  return a;
}

// Direct satisfied fraction, written independently of evaluate().
inline double direct_value(const Instance& inst, const Assignment& a) {
  double sat = 0.0, total = 0.0;
  for (const auto& c : inst.constraints()) {
    int z[3];
    for (int b = 0; b < 3; ++b) {
      const auto& lit = c.lits[static_cast<std::size_t>(b)];
      z[b] = lit.sign * a.values[static_cast<std::size_t>(b)][lit.index - 1];
    }
    const unsigned code = (z[0] < 0 ? 4U : 0U) + (z[1] < 0 ? 2U : 0U) + (z[2] < 0 ? 1U : 0U);
    if ((c.pred.mask >> code) & 1U) sat += c.weight;
    total += c.weight;
  }
  return sat / total;
}

inline double exhaustive_optimum(const Instance& inst) {
  const std::size_t n = inst.num_vars();
  double best = 0.0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    best = std::max(best, direct_value(inst, assignment_from_bits(inst.sizes(), code)));
  }
  return best;
}

// max over x in {+-1}^n of sum a_ij x_i x_j by enumeration.
inline double exhaustive_quadratic_max(const QuadraticObjective& q) {
  const std::uint32_t n = q.size();
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
    double s = 0.0;
    for (const auto& [k, a] : q.entries()) {
      const int xi = ((code >> k.first) & 1U) ? -1 : 1;
      const int xj = ((code >> k.second) & 1U) ? -1 : 1;
      s += a * xi * xj;
    }
    best = std::max(best, s);
  }
  return best;
}

inline QuadraticObjective random_objective(std::uint32_t n, double density, std::uint64_t seed) {
  Rng rng(seed);
  QuadraticObjective q(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (rng.uniform() < density) q.add(i, j, 2.0 * rng.uniform() - 1.0);
    }
  }
  if (q.entries().empty() && n >= 2) q.add(0, 1, 1.0);
  return q;
}

}  // namespace mx3::testing
