#pragma once

#include "mx3/fourier.hpp"
#include "mx3/instance.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mx3 {

// maximize sum_{i<j} a_ij x_i x_j over x in {+-1}^n.
class QuadraticObjective {
 public:
  using Key = std::pair<std::uint32_t, std::uint32_t>;  // first < second

  explicit QuadraticObjective(std::uint32_t n = 0) : n_(n) {}

  // Accumulates into the unordered pair {i, j}; i != j required.
  void add(std::uint32_t i, std::uint32_t j, double coeff);

  std::uint32_t size() const { return n_; }
  const std::map<Key, double>& entries() const { return entries_; }
  bool all_zero() const;
  double abs_sum() const;

  // Per-variable list of (neighbour, coefficient).
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency() const;

  // `i j coeff` triples, one per line.
  std::string dump() const;

 private:
  std::uint32_t n_;
  std::map<Key, double> entries_;
};

// Objective value at a sign vector.
double quadratic_value(const QuadraticObjective& q, std::span<const Sign> x);

struct SdpConfig {
  int rank = 0;  // 0 selects min(n, ceil(sqrt(2n)) + 1), floored at 2
  int max_sweeps = 1000;
  double tol = 1e-10;
  // Truncation thresholds; 0 means pure sign rounding.
  std::vector<double> t_grid{0.0, 0.5, 1.0, std::sqrt(2.0 * std::log(4.0)), 2.0};
  int trials = 64;
  std::uint64_t seed = 0;
};

int effective_rank(const SdpConfig& cfg, std::uint32_t n);
void validate(const SdpConfig& cfg);

// n unit vectors in `rank` dimensions, stored row-major.
struct GramFactor {
  int rank = 2;
  std::uint32_t n = 0;
  std::vector<double> coords;
  bool degenerate = false;  // objective was identically zero
  int sweeps = 0;
  std::vector<double> sweep_values;  // objective after initialization and each sweep

  std::span<const double> vec(std::uint32_t i) const {
    return {coords.data() + std::size_t{i} * static_cast<std::size_t>(rank), static_cast<std::size_t>(rank)};
  }
  double inner(std::uint32_t i, std::uint32_t j) const;
};

// Block-coordinate ascent on the unit-vector relaxation
// max sum a_ij <v_i, v_j>, ||v_i|| = 1. Each step sets v_i to the
// normalized field sum_j a_ij v_j when it is nonzero. Throws NumericalError
// if a sweep lowers the objective beyond round-off.
GramFactor solve_relaxation(const QuadraticObjective& q, const SdpConfig& cfg);

// sum a_ij <v_i, v_j>; throws ValidationError on dimension mismatch.
double relaxation_value(const GramFactor& g, const QuadraticObjective& q);

struct RoundingResult {
  std::vector<Sign> signs;
  double achieved = 0.0;
  double threshold = 0.0;  // T of the winning candidate (0 = sign rounding)
  std::size_t candidate = 0;
  std::size_t candidates = 0;
};

// Gaussian projection u_i = <v_i, g>; for every T in the grid draw
// x_i = +1 with probability (1 + clamp(u_i / T, -1, 1)) / 2, plus the
// sign-of-projection candidate. Best candidate by exact objective wins,
// earliest on ties.
RoundingResult cw_round(const GramFactor& g, const QuadraticObjective& q, const SdpConfig& cfg);

// Flattening of a degree-2 polynomial; variable i of the objective is
// vars[i], and index maps back.
struct IndexedObjective {
  QuadraticObjective objective;
  std::vector<Var> vars;
  std::map<Var, std::uint32_t> index;
};

// Throws ValidationError if any monomial has degree other than 2.
IndexedObjective from_bilinear_poly(const MultilinearPoly& p);

}  // namespace mx3
