#pragma once

#include "mx3/rational.hpp"
#include "mx3/rng.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mx3 {

// Tuple in G^k packed into an integer: coordinate i (0-based) is bit
// k-1-i, set iff the coordinate is -1. Integer order equals lexicographic
// order under +1 < -1, and for k = 3 the code matches Predicate3 masks.
using TupleCode = std::uint64_t;

inline constexpr int kMaxArity = 40;

int tuple_coordinate(TupleCode code, int k, int i);
TupleCode make_tuple_code(std::span<const int> values);
std::vector<int> tuple_values(TupleCode code, int k);
std::string tuple_string(TupleCode code, int k);  // "+--" style
TupleCode parse_tuple_string(std::string_view text);

// Probability vector over G^k with exact rational entries summing to 1.
class TupleDistribution {
 public:
  using Probs = std::map<TupleCode, Rational>;

  // Throws ValidationError if an entry is negative, out of range for k, or
  // the entries do not sum to exactly 1.
  TupleDistribution(int k, Probs probs);

  int arity() const { return k_; }
  const Probs& probs() const { return probs_; }
  Rational prob(TupleCode code) const;

  friend bool operator==(const TupleDistribution&, const TupleDistribution&) = default;

 private:
  int k_;
  Probs probs_;
};

// Tuples with strictly positive probability, ascending.
std::vector<TupleCode> ground(const TupleDistribution& d);

TupleDistribution uniform_over(int k, std::span<const TupleCode> support);
TupleDistribution point_mass(int k, TupleCode code);

// G_m in G^3: tuples with exactly m coordinates equal to +1.
std::vector<TupleCode> tuples_with_plus_count(int m);
// C = G3 u G1, the support of the XOR predicate.
std::vector<TupleCode> xor_support();

struct PairwiseCheck {
  bool holds = true;
  // First failing condition: {i} for a single-coordinate marginal, {i, j}
  // for a pair (1-based). Empty when the check holds.
  std::vector<int> witness;
  Rational observed;
  Rational expected;
  std::vector<Rational> singles;             // P[z_i = +1]
  std::vector<std::vector<Rational>> pairs;  // P[z_i = +1, z_j = +1]
};

// Holds iff P[z_i = 1] = gamma for every i, P[z_i = 1, z_j = 1] = gamma^2
// for every i != j, each within tol. Only value +1 is checked.
PairwiseCheck check_pairwise_independent(const TupleDistribution& d, const Rational& gamma,
                                         const Rational& tol = Rational(0));

struct DisguiseComponent {
  Rational weight;
  TupleDistribution dist;
};

struct DisguiseSpec {
  std::vector<DisguiseComponent> components;
};

// phi(z) = sum_l psi_l phi_l(z). Throws ValidationError on overlapping
// grounds (naming the shared tuple), non-positive weights, weights not
// summing to 1, or mismatched arity.
TupleDistribution disguise(const DisguiseSpec& spec);

// Marginal over the listed 0-based coordinates, in the listed order.
TupleDistribution marginal(const TupleDistribution& d, std::span<const int> coordinates);

// Joint distribution of independent (a, b), a's coordinates first.
TupleDistribution product(const TupleDistribution& a, const TupleDistribution& b);

// Total variation distance between two distributions of equal arity.
double total_variation(const TupleDistribution& a, const std::map<TupleCode, double>& empirical);

// Inverse-CDF sampler over the ground; deterministic per stream state.
class TupleSampler {
 public:
  explicit TupleSampler(const TupleDistribution& d);

  TupleCode operator()(Rng& rng) const;
  int arity() const { return k_; }

 private:
  int k_;
  std::vector<TupleCode> codes_;
  std::vector<double> cumulative_;
};

TupleCode sample(const TupleDistribution& d, Rng& rng);

// Lines `<tuple as +-+> <num>/<den>`.
std::string dump(const TupleDistribution& d);
TupleDistribution parse_distribution(std::string_view text);

}  // namespace mx3
