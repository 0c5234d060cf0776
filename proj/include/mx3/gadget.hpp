#pragma once

#include "mx3/distributions.hpp"
#include "mx3/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mx3 {

// Desk caps; exceeding them raises CapError.
inline constexpr int kMaxLargeAlphabet = 12;            // d * R
inline constexpr std::size_t kMaxSupport = 1'000'000;   // enumerated entries
inline constexpr std::uint32_t kMaxBlockSize = 1U << 20;

struct LabelCoverEdge {
  std::uint32_t u = 0;  // 0-based
  std::uint32_t v = 0;  // 0-based
  // projection[p] in [0, R) for every large label p in [0, dR).
  std::vector<std::uint32_t> projection;
};

// 0-based labels: u_labels[u] in [0, R), v_labels[v] in [0, dR).
struct Labeling {
  std::vector<std::uint32_t> u_labels;
  std::vector<std::uint32_t> v_labels;
};

// Bi-regular bipartite projection game with d-to-1 maps.
class LabelCoverInstance {
 public:
  // Validates bi-regularity, d-to-1 projections, and that a planted labeling
  // (when given) satisfies every edge. Throws ValidationError otherwise.
  LabelCoverInstance(int R, int d, std::uint32_t nU, std::uint32_t nV,
                     std::vector<LabelCoverEdge> edges, std::optional<Labeling> planted = {});

  int small_alphabet() const { return R_; }
  int multiplicity() const { return d_; }
  int large_alphabet() const { return R_ * d_; }
  std::uint32_t num_u() const { return nU_; }
  std::uint32_t num_v() const { return nV_; }
  const std::vector<LabelCoverEdge>& edges() const { return edges_; }
  const std::optional<Labeling>& planted() const { return planted_; }

  bool satisfies(const LabelCoverEdge& e, const Labeling& labels) const;
  std::size_t count_satisfied(const Labeling& labels) const;

 private:
  int R_;
  int d_;
  std::uint32_t nU_;
  std::uint32_t nV_;
  std::vector<LabelCoverEdge> edges_;
  std::optional<Labeling> planted_;
};

// Random bi-regular instance with a planted perfect labeling. `degree` is
// the degree of every U vertex; V vertices get nU * degree / nV.
LabelCoverInstance make_label_cover(int R, int d, std::uint32_t nU, std::uint32_t nV,
                                    std::uint32_t degree, std::uint64_t seed);

// `p lc <R> <d> <nU> <nV> <nE>`, `e <u> <v> <pi(1)> ... <pi(dR)>`, optional
// `a u <u> <label>` / `a v <v> <label>`; all 1-based.
LabelCoverInstance parse_label_cover(std::string_view text);
std::string serialize(const LabelCoverInstance& lc);

// One row of the test matrix over G x G^d x G^d, coordinates ordered
// (g, a_1..a_d, b_1..b_d): g follows phi's first-coordinate marginal and each
// (a_j, b_j) is drawn from phi conditioned on its first coordinate being g,
// independently across j.
TupleDistribution row_distribution(const TupleDistribution& phi, int d);

// Column 1 (the first `column1_width` coordinates) replaced by an
// independent uniform value; the remaining columns keep their joint law.
TupleDistribution uncorrelate(const TupleDistribution& row, int column1_width = 1);

// Exact law after re-randomizing every coordinate independently with
// probability eta.
TupleDistribution apply_noise_exact(const TupleDistribution& dist, const Rational& eta);

class NoisySampler {
 public:
  NoisySampler(const TupleDistribution& dist, double eta, std::uint64_t seed);

  TupleCode operator()();

 private:
  TupleSampler base_;
  double eta_;
  Rng rng_;
};

// Sampler for the eta-noisy version of `dist`. 0 <= eta < 1.
NoisySampler apply_noise(const TupleDistribution& dist, double eta, std::uint64_t seed);

// Antipodal quotient of G^m: the representative is the smaller of {x, -x}
// (first coordinate +1), and sign * representative = point.
struct FoldedPoint {
  TupleCode representative = 0;
  Sign sign = 1;

  friend bool operator==(const FoldedPoint&, const FoldedPoint&) = default;
};

FoldedPoint fold(TupleCode point, int m);

enum class ComposeMode { kEnumerate, kSample };

struct ComposeOptions {
  double eta = 0.0;
  // Enumerate mode: cap on the per-edge support. Sample mode: draws per edge.
  std::uint64_t per_edge_budget = 1U << 16;
  ComposeMode mode = ComposeMode::kEnumerate;
  std::uint64_t seed = 0;
};

// Block sizes of the composed instance: (nU * 2^(R-1), nV * 2^(dR-1) twice).
BlockSizes composed_sizes(const LabelCoverInstance& lc);

// Composes the 3-player test with the Label-Cover instance. Block 1 holds
// folded points of U x G^R, blocks 2 and 3 folded points of V x G^(dR).
// Every edge contributes total weight 1 before normalization.
Instance compose(const LabelCoverInstance& lc, const TupleDistribution& phi,
                 const ComposeOptions& options);

// Block 1 variable (u, x) gets x_{A(u)}, blocks 2 and 3 (v, y) get y_{A(v)},
// read off the folded representatives.
Assignment dictator_assignment(const LabelCoverInstance& lc, const Instance& inst);
Assignment dictator_assignment(const LabelCoverInstance& lc, const Labeling& labels,
                               const Instance& inst);

}  // namespace mx3
