#include "mx3/gadget.hpp"

#include "mx3/error.hpp"
#include "mx3/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace mx3 {

// ---------------------------------------------------------------------------
// Label-Cover

LabelCoverInstance::LabelCoverInstance(int R, int d, std::uint32_t nU, std::uint32_t nV,
                                       std::vector<LabelCoverEdge> edges,
                                       std::optional<Labeling> planted)
    : R_(R), d_(d), nU_(nU), nV_(nV), edges_(std::move(edges)), planted_(std::move(planted)) {
  if (R < 1 || d < 1) throw ValidationError("label cover needs R >= 1 and d >= 1");
  if (R * d > kMaxLargeAlphabet) {
    throw CapError("dR = " + std::to_string(R * d) + " exceeds desk cap " +
                   std::to_string(kMaxLargeAlphabet));
  }
  if (nU < 1 || nV < 1 || edges_.empty()) throw ValidationError("label cover needs vertices and edges");
  const auto large = static_cast<std::size_t>(R * d);
  std::vector<std::uint32_t> deg_u(nU, 0), deg_v(nV, 0);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.u >= nU || e.v >= nV) throw ValidationError("edge " + std::to_string(i + 1) + " endpoint out of range");
    if (e.projection.size() != large) {
      throw ValidationError("edge " + std::to_string(i + 1) + " projection must have dR entries");
    }
    std::vector<int> fibre(static_cast<std::size_t>(R), 0);
    for (auto t : e.projection) {
      if (t >= static_cast<std::uint32_t>(R)) {
        throw ValidationError("edge " + std::to_string(i + 1) + " projection value out of range");
      }
      ++fibre[t];
    }
    if (std::any_of(fibre.begin(), fibre.end(), [d](int c) { return c != d; })) {
      throw ValidationError("edge " + std::to_string(i + 1) + " projection is not d-to-1");
    }
    ++deg_u[e.u];
    ++deg_v[e.v];
  }
  if (std::adjacent_find(deg_u.begin(), deg_u.end(), std::not_equal_to<>()) != deg_u.end() ||
      std::adjacent_find(deg_v.begin(), deg_v.end(), std::not_equal_to<>()) != deg_v.end()) {
    throw ValidationError("label cover graph is not bi-regular");
  }
  if (planted_) {
    const auto& a = *planted_;
    if (a.u_labels.size() != nU || a.v_labels.size() != nV) {
      throw ValidationError("planted labeling has wrong length");
    }
    for (auto l : a.u_labels) {
      if (l >= static_cast<std::uint32_t>(R)) throw ValidationError("planted U label out of range");
    }
    for (auto l : a.v_labels) {
      if (l >= large) throw ValidationError("planted V label out of range");
    }
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (!satisfies(edges_[i], a)) {
        throw ValidationError("planted labeling violates edge " + std::to_string(i + 1));
      }
    }
  }
}

bool LabelCoverInstance::satisfies(const LabelCoverEdge& e, const Labeling& labels) const {
  return e.projection[labels.v_labels[e.v]] == labels.u_labels[e.u];
}

std::size_t LabelCoverInstance::count_satisfied(const Labeling& labels) const {
  return static_cast<std::size_t>(std::count_if(edges_.begin(), edges_.end(), [&](const auto& e) {
    return satisfies(e, labels);
  }));
}

LabelCoverInstance make_label_cover(int R, int d, std::uint32_t nU, std::uint32_t nV,
                                    std::uint32_t degree, std::uint64_t seed) {
  if (R < 1 || d < 1) throw ValidationError("label cover needs R >= 1 and d >= 1");
  if (R * d > kMaxLargeAlphabet) {
    throw CapError("dR = " + std::to_string(R * d) + " exceeds desk cap " +
                   std::to_string(kMaxLargeAlphabet));
  }
  if (nU < 1 || nV < 1 || degree < 1) throw ValidationError("label cover sizes must be positive");
  const std::uint64_t stubs = std::uint64_t{nU} * degree;
  if (stubs % nV != 0 || degree > nV) {
    throw ValidationError("no bi-regular graph with nU=" + std::to_string(nU) + ", nV=" +
                          std::to_string(nV) + ", degree=" + std::to_string(degree));
  }
  Rng rng(derive_seed(seed, {0x1c}));
  std::vector<std::uint32_t> v_perm(nV);
  std::iota(v_perm.begin(), v_perm.end(), 0U);
  shuffle(v_perm.begin(), v_perm.end(), rng);

  Labeling planted;
  planted.u_labels.resize(nU);
  planted.v_labels.resize(nV);
  for (auto& l : planted.u_labels) l = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(R)));
  for (auto& l : planted.v_labels) l = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(R * d)));

  // Stub s = u * degree + k goes to v = s mod nV: consecutive stubs of one
  // u hit distinct v, and each v receives stubs / nV of them.
  std::vector<LabelCoverEdge> edges;
  edges.reserve(stubs);
  for (std::uint32_t u = 0; u < nU; ++u) {
    for (std::uint32_t k = 0; k < degree; ++k) {
      const auto slot = static_cast<std::uint32_t>((std::uint64_t{u} * degree + k) % nV);
      LabelCoverEdge e;
      e.u = u;
      e.v = v_perm[slot];
      e.projection.resize(static_cast<std::size_t>(R * d));
      for (std::size_t p = 0; p < e.projection.size(); ++p) {
        e.projection[p] = static_cast<std::uint32_t>(p / static_cast<std::size_t>(d));
      }
      shuffle(e.projection.begin(), e.projection.end(), rng);
      // Make the planted pair consistent: move a preimage of A(u) onto A(v).
      const auto target = planted.u_labels[u];
      const auto where = planted.v_labels[e.v];
      if (e.projection[where] != target) {
        const auto it = std::find(e.projection.begin(), e.projection.end(), target);
        std::swap(*it, e.projection[where]);
      }
      edges.push_back(std::move(e));
    }
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return LabelCoverInstance(R, d, nU, nV, std::move(edges), std::move(planted));
}

namespace {

std::vector<long long> parse_ints(const std::string& line, std::size_t skip, std::size_t line_no) {
  std::istringstream in(line);
  std::string tok;
  std::vector<long long> out;
  std::size_t i = 0;
  while (in >> tok) {
    if (i++ < skip) continue;
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "bad integer '" + tok + "'");
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

LabelCoverInstance parse_label_cover(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  long long R = 0, d = 0, nU = 0, nV = 0, nE = 0;
  std::vector<LabelCoverEdge> edges;
  std::vector<long long> u_labels, v_labels;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind == "c") continue;
    if (kind == "p") {
      std::string tag;
      fields >> tag;
      const auto v = parse_ints(line, 2, line_no);
      if (header || tag != "lc" || v.size() != 5 || v[0] < 1 || v[1] < 1 || v[2] < 1 || v[3] < 1 ||
          v[4] < 1) {
        throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "expected 'p lc <R> <d> <nU> <nV> <nE>'");
      }
      R = v[0], d = v[1], nU = v[2], nV = v[3], nE = v[4];
      if (R * d > kMaxLargeAlphabet) throw CapError("dR exceeds desk cap");
      u_labels.assign(static_cast<std::size_t>(nU), -1);
      v_labels.assign(static_cast<std::size_t>(nV), -1);
      header = true;
      continue;
    }
    if (!header) throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "content before 'p lc' header");
    if (kind == "e") {
      const auto v = parse_ints(line, 1, line_no);
      if (static_cast<long long>(v.size()) != 2 + R * d) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "edge needs u, v and dR projection values");
      }
      if (v[0] < 1 || v[0] > nU || v[1] < 1 || v[1] > nV) {
        throw ParseError(ParseErrorKind::kLiteralOutOfRange, line_no, "edge endpoint out of range");
      }
      LabelCoverEdge e;
      e.u = static_cast<std::uint32_t>(v[0] - 1);
      e.v = static_cast<std::uint32_t>(v[1] - 1);
      for (std::size_t p = 2; p < v.size(); ++p) {
        if (v[p] < 1 || v[p] > R) throw ParseError(ParseErrorKind::kLiteralOutOfRange, line_no, "projection value out of range");
        e.projection.push_back(static_cast<std::uint32_t>(v[p] - 1));
      }
      edges.push_back(std::move(e));
    } else if (kind == "a") {
      std::string side;
      fields >> side;
      const auto v = parse_ints(line, 2, line_no);
      const bool is_u = side == "u";
      if ((!is_u && side != "v") || v.size() != 2) {
        throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected 'a u|v <vertex> <label>'");
      }
      const long long count = is_u ? nU : nV;
      const long long labels = is_u ? R : R * d;
      if (v[0] < 1 || v[0] > count || v[1] < 1 || v[1] > labels) {
        throw ParseError(ParseErrorKind::kLiteralOutOfRange, line_no, "labeling entry out of range");
      }
      (is_u ? u_labels : v_labels)[static_cast<std::size_t>(v[0] - 1)] = v[1] - 1;
    } else {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "unknown line kind '" + kind + "'");
    }
  }
  if (!header) throw ParseError(ParseErrorKind::kMalformedHeader, line_no, "missing 'p lc' header");
  if (static_cast<long long>(edges.size()) != nE) {
    throw ParseError(ParseErrorKind::kCountMismatch, line_no, "edge count differs from header");
  }
  std::optional<Labeling> planted;
  const bool any = std::any_of(u_labels.begin(), u_labels.end(), [](long long l) { return l >= 0; }) ||
                   std::any_of(v_labels.begin(), v_labels.end(), [](long long l) { return l >= 0; });
  if (any) {
    Labeling a;
    for (auto l : u_labels) {
      if (l < 0) throw ValidationError("planted labeling misses a U vertex");
      a.u_labels.push_back(static_cast<std::uint32_t>(l));
    }
    for (auto l : v_labels) {
      if (l < 0) throw ValidationError("planted labeling misses a V vertex");
      a.v_labels.push_back(static_cast<std::uint32_t>(l));
    }
    planted = std::move(a);
  }
  return LabelCoverInstance(static_cast<int>(R), static_cast<int>(d), static_cast<std::uint32_t>(nU),
                            static_cast<std::uint32_t>(nV), std::move(edges), std::move(planted));
}

std::string serialize(const LabelCoverInstance& lc) {
  std::ostringstream out;
  out << "p lc " << lc.small_alphabet() << ' ' << lc.multiplicity() << ' ' << lc.num_u() << ' '
      << lc.num_v() << ' ' << lc.edges().size() << '\n';
  for (const auto& e : lc.edges()) {
    out << "e " << e.u + 1 << ' ' << e.v + 1;
    for (auto t : e.projection) out << ' ' << t + 1;
    out << '\n';
  }
  if (lc.planted()) {
    const auto& a = *lc.planted();
    for (std::size_t u = 0; u < a.u_labels.size(); ++u) out << "a u " << u + 1 << ' ' << a.u_labels[u] + 1 << '\n';
    for (std::size_t v = 0; v < a.v_labels.size(); ++v) out << "a v " << v + 1 << ' ' << a.v_labels[v] + 1 << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Test distributions

TupleDistribution row_distribution(const TupleDistribution& phi, int d) {
  if (phi.arity() != 3) throw ValidationError("row_distribution needs phi over G^3");
  if (d < 1) throw ValidationError("row_distribution needs d >= 1");
  if (1 + 2 * d > kMaxArity) throw CapError("row arity exceeds cap");
  // Conditional law of (a, b) given the first coordinate g.
  std::map<int, Rational> column1;
  std::map<int, std::vector<std::pair<unsigned, Rational>>> conditional;
  for (const auto& [code, p] : phi.probs()) {
    if (p == 0) continue;
    const int g = static_cast<int>((code >> 2) & 1U);
    column1[g] += p;
    conditional[g].emplace_back(static_cast<unsigned>(code & 3U), p);
  }
  double support = 0.0;
  for (auto& [g, outcomes] : conditional) {
    for (auto& [ab, p] : outcomes) p /= column1[g];
    support += std::pow(static_cast<double>(outcomes.size()), d);
  }
  if (support > static_cast<double>(kMaxSupport)) {
    throw CapError("row support " + std::to_string(static_cast<long long>(support)) +
                   " exceeds cap " + std::to_string(kMaxSupport));
  }
  const int k = 1 + 2 * d;
  TupleDistribution::Probs probs;
  for (const auto& [g, outcomes] : conditional) {
    const std::size_t base = outcomes.size();
    std::vector<std::size_t> digit(static_cast<std::size_t>(d), 0);
    while (true) {
      Rational p = column1.at(g);
      TupleCode a_bits = 0, b_bits = 0;
      for (int j = 0; j < d; ++j) {
        const auto& [ab, q] = outcomes[digit[static_cast<std::size_t>(j)]];
        p *= q;
        a_bits = (a_bits << 1) | ((ab >> 1) & 1U);
        b_bits = (b_bits << 1) | (ab & 1U);
      }
      const TupleCode code = (static_cast<TupleCode>(g) << (2 * d)) | (a_bits << d) | b_bits;
      probs[code] += p;
      std::size_t j = 0;
      while (j < digit.size() && ++digit[j] == base) digit[j++] = 0;
      if (j == digit.size()) break;
    }
  }
  return TupleDistribution(k, std::move(probs));
}

TupleDistribution uncorrelate(const TupleDistribution& row, int column1_width) {
  const int k = row.arity();
  if (column1_width < 1 || column1_width >= k) throw ValidationError("column-1 width out of range");
  std::vector<int> rest(static_cast<std::size_t>(k - column1_width));
  std::iota(rest.begin(), rest.end(), column1_width);
  const TupleDistribution others = marginal(row, rest);
  std::vector<TupleCode> all(std::size_t{1} << column1_width);
  std::iota(all.begin(), all.end(), TupleCode{0});
  return product(uniform_over(column1_width, all), others);
}

TupleDistribution apply_noise_exact(const TupleDistribution& dist, const Rational& eta) {
  if (eta < 0 || eta >= 1) throw ValidationError("noise rate must lie in [0, 1)");
  if (eta == 0) return dist;
  const int k = dist.arity();
  if (k > 20 || (std::size_t{1} << k) > kMaxSupport) throw CapError("noisy support exceeds cap");
  const Rational flip = eta / 2;
  const Rational stay = 1 - flip;
  std::map<TupleCode, Rational> cur(dist.probs().begin(), dist.probs().end());
  for (int i = 0; i < k; ++i) {
    const TupleCode bit = TupleCode{1} << (k - 1 - i);
    std::map<TupleCode, Rational> next;
    for (const auto& [code, p] : cur) {
      if (p == 0) continue;
      next[code] += stay * p;
      next[code ^ bit] += flip * p;
    }
    cur = std::move(next);
  }
  return TupleDistribution(k, std::move(cur));
}

NoisySampler::NoisySampler(const TupleDistribution& dist, double eta, std::uint64_t seed)
    : base_(dist), eta_(eta), rng_(seed) {
  if (!(eta >= 0.0 && eta < 1.0)) throw ValidationError("noise rate must lie in [0, 1)");
}

TupleCode NoisySampler::operator()() {
  TupleCode code = base_(rng_);
  if (eta_ == 0.0) return code;
  const int k = base_.arity();
  for (int i = 0; i < k; ++i) {
    if (rng_.bernoulli(eta_)) {
      const TupleCode bit = TupleCode{1} << (k - 1 - i);
      code = rng_.sign() < 0 ? (code | bit) : (code & ~bit);
    }
  }
  return code;
}

NoisySampler apply_noise(const TupleDistribution& dist, double eta, std::uint64_t seed) {
  return NoisySampler(dist, eta, seed);
}

FoldedPoint fold(TupleCode point, int m) {
  const TupleCode top = TupleCode{1} << (m - 1);
  const TupleCode all = m >= 64 ? ~TupleCode{0} : ((TupleCode{1} << m) - 1);
  if (point & top) return FoldedPoint{(~point) & all, Sign{-1}};
  return FoldedPoint{point, Sign{1}};
}

// ---------------------------------------------------------------------------
// Composition

BlockSizes composed_sizes(const LabelCoverInstance& lc) {
  const std::uint64_t m = std::uint64_t{lc.num_u()} << (lc.small_alphabet() - 1);
  const std::uint64_t n = std::uint64_t{lc.num_v()} << (lc.large_alphabet() - 1);
  if (m > kMaxBlockSize || n > kMaxBlockSize) {
    throw CapError("composed block sizes (" + std::to_string(m) + ", " + std::to_string(n) +
                   ") exceed desk cap " + std::to_string(kMaxBlockSize));
  }
  return {static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(n)};
}

namespace {

// Test matrix for one edge, packed as (z1, z2, z3) over G^R x G^dR x G^dR.
struct TestPoint {
  TupleCode z1 = 0;
  TupleCode z2 = 0;
  TupleCode z3 = 0;

  friend auto operator<=>(const TestPoint&, const TestPoint&) = default;
};

class EdgeLayout {
 public:
  EdgeLayout(const LabelCoverEdge& e, int R, int d) : R_(R), d_(d), slots_(static_cast<std::size_t>(R)) {
    for (std::size_t p = 0; p < e.projection.size(); ++p) slots_[e.projection[p]].push_back(static_cast<int>(p));
  }

  // Place row outcome `row` (coordinates g, a_1..a_d, b_1..b_d) at row t.
  void place(TestPoint& z, int t, TupleCode row) const {
    const int k = 1 + 2 * d_;
    const int large = R_ * d_;
    if (tuple_coordinate(row, k, 0) < 0) z.z1 |= TupleCode{1} << (R_ - 1 - t);
    const auto& slot = slots_[static_cast<std::size_t>(t)];
    for (int j = 0; j < d_; ++j) {
      const int p = slot[static_cast<std::size_t>(j)];
      if (tuple_coordinate(row, k, 1 + j) < 0) z.z2 |= TupleCode{1} << (large - 1 - p);
      if (tuple_coordinate(row, k, 1 + d_ + j) < 0) z.z3 |= TupleCode{1} << (large - 1 - p);
    }
  }

 private:
  int R_;
  int d_;
  std::vector<std::vector<int>> slots_;
};

Constraint make_constraint(const LabelCoverEdge& e, const TestPoint& z, int R, int large,
                           double weight, Predicate3 pred) {
  const FoldedPoint f1 = fold(z.z1, R);
  const FoldedPoint f2 = fold(z.z2, large);
  const FoldedPoint f3 = fold(z.z3, large);
  const std::uint64_t stride1 = std::uint64_t{1} << (R - 1);
  const std::uint64_t stride2 = std::uint64_t{1} << (large - 1);
  Constraint c;
  c.lits[0] = Literal{1, static_cast<std::uint32_t>(e.u * stride1 + f1.representative + 1), f1.sign};
  c.lits[1] = Literal{2, static_cast<std::uint32_t>(e.v * stride2 + f2.representative + 1), f2.sign};
  c.lits[2] = Literal{3, static_cast<std::uint32_t>(e.v * stride2 + f3.representative + 1), f3.sign};
  c.weight = weight;
  c.pred = pred;
  return c;
}

}  // namespace

Instance compose(const LabelCoverInstance& lc, const TupleDistribution& phi,
                 const ComposeOptions& options) {
  if (phi.arity() != 3) throw ValidationError("compose needs phi over G^3");
  if (!check_pairwise_independent(phi, Rational(1, 2)).holds) {
    throw ValidationError("compose needs a balanced pairwise independent phi");
  }
  if (!(options.eta >= 0.0 && options.eta < 1.0)) throw ValidationError("noise rate must lie in [0, 1)");
  if (options.per_edge_budget < 1) throw ValidationError("per-edge budget must be >= 1");
  const BlockSizes sizes = composed_sizes(lc);
  const int R = lc.small_alphabet();
  const int d = lc.multiplicity();
  const int large = lc.large_alphabet();

  Predicate3 pred{0};
  for (TupleCode c : ground(phi)) pred.mask = static_cast<std::uint8_t>(pred.mask | (1U << c));

  const TupleDistribution row = row_distribution(phi, d);
  std::vector<Constraint> cons;

  if (options.mode == ComposeMode::kEnumerate) {
    const TupleDistribution noisy = apply_noise_exact(row, rational_from_double(options.eta));
    std::vector<std::pair<TupleCode, Rational>> outcomes;
    for (const auto& [code, p] : noisy.probs()) {
      if (p > 0) outcomes.emplace_back(code, p);
    }
    const double support = std::pow(static_cast<double>(outcomes.size()), R);
    if (support > static_cast<double>(options.per_edge_budget)) {
      throw CapError("per-edge support " + std::to_string(static_cast<long long>(support)) +
                     " exceeds budget " + std::to_string(options.per_edge_budget) +
                     "; use sample mode");
    }
    for (const auto& e : lc.edges()) {
      const EdgeLayout layout(e, R, d);
      std::vector<std::size_t> digit(static_cast<std::size_t>(R), 0);
      while (true) {
        TestPoint z;
        Rational p(1);
        for (int t = 0; t < R; ++t) {
          const auto& [code, q] = outcomes[digit[static_cast<std::size_t>(t)]];
          layout.place(z, t, code);
          p *= q;
        }
        cons.push_back(make_constraint(e, z, R, large, to_double(p), pred));
        std::size_t j = 0;
        while (j < digit.size() && ++digit[j] == outcomes.size()) digit[j++] = 0;
        if (j == digit.size()) break;
      }
    }
  } else {
    const double budget = static_cast<double>(options.per_edge_budget);
    for (std::size_t ei = 0; ei < lc.edges().size(); ++ei) {
      const auto& e = lc.edges()[ei];
      const EdgeLayout layout(e, R, d);
      NoisySampler draw(row, options.eta, derive_seed(options.seed, {0xed6e, ei}));
      std::map<TestPoint, std::uint64_t> counts;
      for (std::uint64_t s = 0; s < options.per_edge_budget; ++s) {
        TestPoint z;
        for (int t = 0; t < R; ++t) layout.place(z, t, draw());
        ++counts[z];
      }
      for (const auto& [z, count] : counts) {
        cons.push_back(make_constraint(e, z, R, large, static_cast<double>(count) / budget, pred));
      }
    }
  }
  return Instance(sizes, std::move(cons));
}

Assignment dictator_assignment(const LabelCoverInstance& lc, const Instance& inst) {
  if (!lc.planted()) throw ValidationError("dictator assignment needs a planted labeling");
  return dictator_assignment(lc, *lc.planted(), inst);
}

Assignment dictator_assignment(const LabelCoverInstance& lc, const Labeling& labels,
                               const Instance& inst) {
  const BlockSizes sizes = composed_sizes(lc);
  if (sizes != inst.sizes()) throw ValidationError("instance does not match the label cover layout");
  if (labels.u_labels.size() != lc.num_u() || labels.v_labels.size() != lc.num_v()) {
    throw ValidationError("labeling has wrong length");
  }
  const int R = lc.small_alphabet();
  const int large = lc.large_alphabet();
  const std::uint64_t stride1 = std::uint64_t{1} << (R - 1);
  const std::uint64_t stride2 = std::uint64_t{1} << (large - 1);
  Assignment a = Assignment::all_plus(sizes);
  for (std::uint32_t u = 0; u < lc.num_u(); ++u) {
    for (TupleCode rep = 0; rep < stride1; ++rep) {
      a.values[0][u * stride1 + rep] =
          static_cast<Sign>(tuple_coordinate(rep, R, static_cast<int>(labels.u_labels[u])));
    }
  }
  for (std::uint32_t v = 0; v < lc.num_v(); ++v) {
    for (TupleCode rep = 0; rep < stride2; ++rep) {
      const auto value = static_cast<Sign>(tuple_coordinate(rep, large, static_cast<int>(labels.v_labels[v])));
      a.values[1][v * stride2 + rep] = value;
      a.values[2][v * stride2 + rep] = value;
    }
  }
  return a;
}

}  // namespace mx3
