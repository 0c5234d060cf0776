#include "mx3/distributions.hpp"

#include "mx3/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace mx3 {

namespace {

void check_arity(int k) {
  if (k < 1 || k > kMaxArity) {
    throw ValidationError("arity " + std::to_string(k) + " outside 1.." + std::to_string(kMaxArity));
  }
}

}  // namespace

int tuple_coordinate(TupleCode code, int k, int i) {
  return ((code >> (k - 1 - i)) & 1U) ? -1 : 1;
}

TupleCode make_tuple_code(std::span<const int> values) {
  TupleCode code = 0;
  for (int v : values) code = (code << 1) | (v < 0 ? 1U : 0U);
  return code;
}

std::vector<int> tuple_values(TupleCode code, int k) {
  std::vector<int> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = tuple_coordinate(code, k, i);
  return out;
}

std::string tuple_string(TupleCode code, int k) {
  std::string s(static_cast<std::size_t>(k), '+');
  for (int i = 0; i < k; ++i) {
    if (tuple_coordinate(code, k, i) < 0) s[static_cast<std::size_t>(i)] = '-';
  }
  return s;
}

TupleCode parse_tuple_string(std::string_view text) {
  if (text.empty() || static_cast<int>(text.size()) > kMaxArity) {
    throw ValidationError("tuple '" + std::string(text) + "' has invalid length");
  }
  TupleCode code = 0;
  for (char ch : text) {
    if (ch != '+' && ch != '-') throw ValidationError("tuple '" + std::string(text) + "' must use + and -");
    code = (code << 1) | (ch == '-' ? 1U : 0U);
  }
  return code;
}

TupleDistribution::TupleDistribution(int k, Probs probs) : k_(k), probs_(std::move(probs)) {
  check_arity(k);
  Rational total(0);
  for (const auto& [code, p] : probs_) {
    if (k < 64 && code >> k) throw ValidationError("tuple code out of range for arity " + std::to_string(k));
    if (p < 0) throw ValidationError("negative probability on " + tuple_string(code, k));
    total += p;
  }
  if (total != 1) throw ValidationError("probabilities sum to " + to_string(total) + ", not 1");
}

Rational TupleDistribution::prob(TupleCode code) const {
  const auto it = probs_.find(code);
  return it == probs_.end() ? Rational(0) : it->second;
}

std::vector<TupleCode> ground(const TupleDistribution& d) {
  std::vector<TupleCode> out;
  for (const auto& [code, p] : d.probs()) {
    if (p > 0) out.push_back(code);
  }
  return out;
}

TupleDistribution uniform_over(int k, std::span<const TupleCode> support) {
  const std::set<TupleCode> unique(support.begin(), support.end());
  if (unique.empty()) throw ValidationError("uniform_over needs a nonempty set");
  const Rational each(1, static_cast<long long>(unique.size()));
  TupleDistribution::Probs probs;
  for (TupleCode c : unique) probs.emplace(c, each);
  return TupleDistribution(k, std::move(probs));
}

TupleDistribution point_mass(int k, TupleCode code) {
  return TupleDistribution(k, {{code, Rational(1)}});
}

std::vector<TupleCode> tuples_with_plus_count(int m) {
  std::vector<TupleCode> out;
  for (TupleCode code = 0; code < 8; ++code) {
    const int minus = __builtin_popcountll(code);
    if (3 - minus == m) out.push_back(code);
  }
  return out;
}

std::vector<TupleCode> xor_support() {
  auto out = tuples_with_plus_count(3);
  const auto g1 = tuples_with_plus_count(1);
  out.insert(out.end(), g1.begin(), g1.end());
  std::sort(out.begin(), out.end());
  return out;
}

PairwiseCheck check_pairwise_independent(const TupleDistribution& d, const Rational& gamma,
                                         const Rational& tol) {
  if (!(gamma > 0 && gamma < 1)) throw ValidationError("bias gamma must lie in (0, 1)");
  if (tol < 0) throw ValidationError("tolerance must be >= 0");
  const int k = d.arity();
  const auto ku = static_cast<std::size_t>(k);
  PairwiseCheck out;
  out.singles.assign(ku, Rational(0));
  out.pairs.assign(ku, std::vector<Rational>(ku, Rational(0)));
  for (const auto& [code, p] : d.probs()) {
    for (int i = 0; i < k; ++i) {
      if (tuple_coordinate(code, k, i) != 1) continue;
      out.singles[static_cast<std::size_t>(i)] += p;
      for (int j = i + 1; j < k; ++j) {
        if (tuple_coordinate(code, k, j) == 1) out.pairs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += p;
      }
    }
  }
  for (std::size_t i = 0; i < ku; ++i) {
    for (std::size_t j = i + 1; j < ku; ++j) out.pairs[j][i] = out.pairs[i][j];
  }
  auto off = [&tol](const Rational& a, const Rational& b) {
    const Rational diff = a - b;
    return (diff < 0 ? Rational(-diff) : diff) > tol;
  };
  for (std::size_t i = 0; i < ku; ++i) {
    if (off(out.singles[i], gamma)) {
      out.holds = false;
      out.witness = {static_cast<int>(i) + 1};
      out.observed = out.singles[i];
      out.expected = gamma;
      return out;
    }
  }
  const Rational gamma2 = gamma * gamma;
  for (std::size_t i = 0; i < ku; ++i) {
    for (std::size_t j = i + 1; j < ku; ++j) {
      if (off(out.pairs[i][j], gamma2)) {
        out.holds = false;
        out.witness = {static_cast<int>(i) + 1, static_cast<int>(j) + 1};
        out.observed = out.pairs[i][j];
        out.expected = gamma2;
        return out;
      }
    }
  }
  return out;
}

TupleDistribution disguise(const DisguiseSpec& spec) {
  if (spec.components.empty()) throw ValidationError("disguise needs at least one component");
  const int k = spec.components.front().dist.arity();
  Rational weight_sum(0);
  std::map<TupleCode, std::size_t> owner;
  TupleDistribution::Probs probs;
  for (std::size_t l = 0; l < spec.components.size(); ++l) {
    const auto& comp = spec.components[l];
    if (comp.dist.arity() != k) throw ValidationError("disguise components differ in arity");
    if (!(comp.weight > 0)) throw ValidationError("disguise weights must be positive");
    weight_sum += comp.weight;
    for (TupleCode code : ground(comp.dist)) {
      if (auto [it, fresh] = owner.emplace(code, l); !fresh) {
        throw ValidationError("grounds of components " + std::to_string(it->second + 1) + " and " +
                              std::to_string(l + 1) + " share tuple " + tuple_string(code, k));
      }
      probs[code] += comp.weight * comp.dist.prob(code);
    }
  }
  if (weight_sum != 1) throw ValidationError("disguise weights sum to " + to_string(weight_sum) + ", not 1");
  return TupleDistribution(k, std::move(probs));
}

TupleDistribution marginal(const TupleDistribution& d, std::span<const int> coordinates) {
  const int k = d.arity();
  for (int c : coordinates) {
    if (c < 0 || c >= k) throw ValidationError("marginal coordinate out of range");
  }
  TupleDistribution::Probs probs;
  for (const auto& [code, p] : d.probs()) {
    if (p == 0) continue;
    TupleCode sub = 0;
    for (int c : coordinates) sub = (sub << 1) | ((code >> (k - 1 - c)) & 1U);
    probs[sub] += p;
  }
  return TupleDistribution(static_cast<int>(coordinates.size()), std::move(probs));
}

TupleDistribution product(const TupleDistribution& a, const TupleDistribution& b) {
  const int k = a.arity() + b.arity();
  check_arity(k);
  TupleDistribution::Probs probs;
  for (const auto& [ca, pa] : a.probs()) {
    if (pa == 0) continue;
    for (const auto& [cb, pb] : b.probs()) {
      if (pb == 0) continue;
      probs.emplace((ca << b.arity()) | cb, pa * pb);
    }
  }
  return TupleDistribution(k, std::move(probs));
}

double total_variation(const TupleDistribution& a, const std::map<TupleCode, double>& empirical) {
  std::set<TupleCode> keys;
  for (const auto& [c, p] : a.probs()) keys.insert(c);
  for (const auto& [c, p] : empirical) keys.insert(c);
  double tv = 0.0;
  for (TupleCode c : keys) {
    const auto it = empirical.find(c);
    const double q = it == empirical.end() ? 0.0 : it->second;
    tv += std::abs(to_double(a.prob(c)) - q);
  }
  return tv / 2.0;
}

TupleSampler::TupleSampler(const TupleDistribution& d) : k_(d.arity()) {
  Rational running(0);
  for (const auto& [code, p] : d.probs()) {
    if (p == 0) continue;
    running += p;
    codes_.push_back(code);
    cumulative_.push_back(to_double(running));
  }
  cumulative_.back() = 1.0;
}

TupleCode TupleSampler::operator()(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), codes_.size() - 1);
  return codes_[idx];
}

TupleCode sample(const TupleDistribution& d, Rng& rng) { return TupleSampler(d)(rng); }

std::string dump(const TupleDistribution& d) {
  std::ostringstream out;
  for (const auto& [code, p] : d.probs()) {
    out << tuple_string(code, d.arity()) << ' ' << to_string(p) << '\n';
  }
  return out.str();
}

TupleDistribution parse_distribution(std::string_view text) {
  int k = 0;
  TupleDistribution::Probs probs;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tuple, prob, extra;
    if (!(fields >> tuple) || tuple[0] == '#' || tuple == "c") continue;
    if (!(fields >> prob) || (fields >> extra)) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "expected '<tuple> <num>/<den>'");
    }
    TupleCode code = 0;
    Rational p;
    try {
      code = parse_tuple_string(tuple);
      p = parse_rational(prob);
    } catch (const ValidationError& e) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, e.what());
    }
    if (k == 0) k = static_cast<int>(tuple.size());
    if (static_cast<int>(tuple.size()) != k) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "tuple arity differs from earlier lines");
    }
    if (!probs.emplace(code, p).second) {
      throw ParseError(ParseErrorKind::kMalformedLine, line_no, "duplicate tuple " + tuple);
    }
  }
  if (k == 0) throw ParseError(ParseErrorKind::kMalformedLine, line_no, "no tuples");
  return TupleDistribution(k, std::move(probs));
}

}  // namespace mx3
