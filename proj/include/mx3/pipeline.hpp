#pragma once

#include "mx3/fourier.hpp"
#include "mx3/gadget.hpp"
#include "mx3/instance.hpp"
#include "mx3/sdp.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace mx3 {

// Product variables x23_(i2,i3) live in this block of the bilinear program.
inline constexpr int kProductBlock = 4;

struct BilinearizedProgram {
  MultilinearPoly i2;
  // Product variable k (1-based) stands for x2_{pairs[k-1].first} * x3_{pairs[k-1].second}.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pair_index;
};

// Each a * x1_i * x2_j * x3_k becomes a * x1_i * x23_(j,k). Throws
// ValidationError naming any monomial that is not one variable per block.
BilinearizedProgram bilinearize(const MultilinearPoly& i3);

// Substitutes block-1 values: a * x1_i * x2_j * x3_k -> (a * f1[i]) * x2_j * x3_k,
// like terms combined. f1[i - 1] is the value of x1_i.
MultilinearPoly condition(const MultilinearPoly& i3, std::span<const Sign> f1);

struct PipelineConfig {
  SdpConfig sdp;
  int restarts = 5;
  std::uint64_t seed = 0;
  std::uint64_t baseline_trials = 10000;
  bool oracle = false;
  unsigned jobs = 1;  // oracle worker threads
};

struct PipelineRun {
  std::uint64_t seed = 0;
  double sdp1 = 0.0;    // relaxation value on I2
  double round1 = 0.0;  // rounded I2 value
  double sdp2 = 0.0;    // relaxation value on the conditioned I3
  double round2 = 0.0;  // rounded conditioned value
  double final_value = 0.0;
  double consistency = 1.0;  // fraction of x23 equal to f2 * f3 under the final f
  int sweeps1 = 0;
  int sweeps2 = 0;
};

struct PipelineReport {
  std::string id;
  std::size_t n_vars = 0;
  std::size_t n_cons = 0;
  double baseline = 0.0;
  double sdp1 = 0.0;
  double sdp2 = 0.0;
  double final_value = 0.0;
  std::optional<double> opt;
  std::string opt_source;  // "brute", "dictator", or empty
  std::optional<double> i3_at_opt;
  double margin = 0.0;  // final - 1/2
  double consistency = 1.0;
  std::uint64_t seed = 0;
  double ms = 0.0;
  std::size_t f1_minus = 0;  // block-1 variables set to -1 by round 1
  std::size_t i3_terms = 0;
  std::size_t dropped_terms = 0;  // degree 1 and 2 terms ignored by the rounds
  bool degenerate_cubic = false;
  std::size_t best_run = 0;
  std::vector<PipelineRun> runs;
};

// Two-round pipeline: objective -> degree-3 slice -> bilinearize -> round 1
// -> keep x1 -> condition -> round 2 -> assemble -> evaluate on the full
// objective. Best of cfg.restarts seeds. Throws NumericalError when an
// internal cross-check fails.
std::pair<Assignment, PipelineReport> two_round(const Instance& inst, const PipelineConfig& cfg,
                                                const std::string& id = "");

enum class Family { kPlanted, kRandom, kGadget };

const char* to_string(Family f);
Family parse_family(const std::string& name);

struct FamilySpec {
  Family family = Family::kRandom;
  std::size_t count = 10;
  BlockSizes sizes{6, 6, 6};
  std::size_t constraints = 40;
  double eps = 0.1;
  // Gadget family.
  int R = 1;
  int d = 2;
  std::uint32_t n_u = 2;
  std::uint32_t n_v = 2;
  std::uint32_t degree = 2;
  double eta = 0.0;
  ComposeMode mode = ComposeMode::kEnumerate;
  std::uint64_t budget = 1U << 16;
};

struct ExperimentRow {
  PipelineReport report;
  std::optional<std::string> error;
  std::optional<double> dictator;  // gadget family only
};

struct ExperimentAggregate {
  std::size_t rows = 0;
  std::size_t errors = 0;
  double mean_final = 0.0;
  double mean_opt = 0.0;
  std::size_t opt_rows = 0;
  double mean_baseline = 0.0;
  double mean_margin = 0.0;
  double min_margin = 0.0;
  double mean_ratio = 0.0;  // final / opt over rows with an optimum
  double mean_consistency = 0.0;
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
  ExperimentAggregate aggregate;
};

// Runs the pipeline over a generated family. Rows are produced in instance
// order regardless of `jobs`; a failing row records its error and the run
// continues. Measurement only: no verdict on any claimed margin.
ExperimentResult gap_experiment(const FamilySpec& family, const PipelineConfig& cfg, unsigned jobs = 1);

// The instance a family produces at position k for a given seed.
struct FamilyMember {
  Instance instance;
  std::optional<LabelCoverInstance> label_cover;
};
FamilyMember family_member(const FamilySpec& family, std::uint64_t seed, std::size_t k);

}  // namespace mx3
