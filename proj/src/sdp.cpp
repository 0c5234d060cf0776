#include "mx3/sdp.hpp"

#include "mx3/error.hpp"
#include "mx3/rng.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mx3 {

void QuadraticObjective::add(std::uint32_t i, std::uint32_t j, double coeff) {
  if (i == j) throw ValidationError("quadratic objective has no diagonal entries");
  if (i >= n_ || j >= n_) throw ValidationError("quadratic objective index out of range");
  if (i > j) std::swap(i, j);
  entries_[{i, j}] += coeff;
}

bool QuadraticObjective::all_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.second == 0.0; });
}

double QuadraticObjective::abs_sum() const {
  double s = 0.0;
  for (const auto& [k, a] : entries_) s += std::abs(a);
  return s;
}

std::vector<std::vector<std::pair<std::uint32_t, double>>> QuadraticObjective::adjacency() const {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n_);
  for (const auto& [k, a] : entries_) {
    if (a == 0.0) continue;
    adj[k.first].emplace_back(k.second, a);
    adj[k.second].emplace_back(k.first, a);
  }
  return adj;
}

std::string QuadraticObjective::dump() const {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [k, a] : entries_) out << k.first << ' ' << k.second << ' ' << a << '\n';
  return out.str();
}

double quadratic_value(const QuadraticObjective& q, std::span<const Sign> x) {
  if (x.size() != q.size()) throw ValidationError("sign vector length differs from objective size");
  double s = 0.0;
  for (const auto& [k, a] : q.entries()) s += a * x[k.first] * x[k.second];
  return s;
}

int effective_rank(const SdpConfig& cfg, std::uint32_t n) {
  if (cfg.rank > 0) return std::max(cfg.rank, 2);
  const int heuristic = static_cast<int>(std::ceil(std::sqrt(2.0 * n))) + 1;
  return std::max(2, std::min(static_cast<int>(n), heuristic));
}

void validate(const SdpConfig& cfg) {
  if (cfg.rank != 0 && cfg.rank < 2) throw ValidationError("sdp rank must be >= 2");
  if (!(cfg.tol > 0.0)) throw ValidationError("sdp tolerance must be > 0");
  if (cfg.trials < 1) throw ValidationError("rounding trials must be >= 1");
  if (cfg.max_sweeps < 1) throw ValidationError("max sweeps must be >= 1");
  for (double t : cfg.t_grid) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("truncation grid entries must be finite and >= 0");
  }
}

double GramFactor::inner(std::uint32_t i, std::uint32_t j) const {
  const auto a = vec(i);
  const auto b = vec(j);
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += a[c] * b[c];
  return s;
}

double relaxation_value(const GramFactor& g, const QuadraticObjective& q) {
  if (g.n != q.size()) throw ValidationError("gram factor and objective differ in size");
  double s = 0.0;
  for (const auto& [k, a] : q.entries()) s += a * g.inner(k.first, k.second);
  return s;
}

GramFactor solve_relaxation(const QuadraticObjective& q, const SdpConfig& cfg) {
  validate(cfg);
  GramFactor g;
  g.n = q.size();
  g.rank = effective_rank(cfg, g.n);
  const auto r = static_cast<std::size_t>(g.rank);
  g.coords.assign(std::size_t{g.n} * r, 0.0);

  Rng rng(derive_seed(cfg.seed, {0x5d9}));
  for (std::uint32_t i = 0; i < g.n; ++i) {
    double* v = g.coords.data() + std::size_t{i} * r;
    double norm = 0.0;
    while (norm < 1e-12) {
      norm = 0.0;
      for (std::size_t c = 0; c < r; ++c) {
        v[c] = rng.normal();
        norm += v[c] * v[c];
      }
    }
    norm = std::sqrt(norm);
    for (std::size_t c = 0; c < r; ++c) v[c] /= norm;
  }
  if (g.n == 0 || q.all_zero()) {
    g.degenerate = true;
    g.sweep_values.push_back(0.0);
    return g;
  }

  const auto adj = q.adjacency();
  const double scale = std::max(1.0, q.abs_sum());
  std::vector<double> field(r);
  double value = relaxation_value(g, q);
  g.sweep_values.push_back(value);
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    for (std::uint32_t i = 0; i < g.n; ++i) {
      std::fill(field.begin(), field.end(), 0.0);
      for (const auto& [j, a] : adj[i]) {
        const double* w = g.coords.data() + std::size_t{j} * r;
        for (std::size_t c = 0; c < r; ++c) field[c] += a * w[c];
      }
      double norm = 0.0;
      for (double f : field) norm += f * f;
      norm = std::sqrt(norm);
      if (norm <= 1e-300) continue;
      double* v = g.coords.data() + std::size_t{i} * r;
      for (std::size_t c = 0; c < r; ++c) v[c] = field[c] / norm;
    }
    const double next = relaxation_value(g, q);
    g.sweep_values.push_back(next);
    ++g.sweeps;
    if (next < value - 1e-12 * scale) {
      throw NumericalError("relaxation objective decreased from " + std::to_string(value) + " to " +
                           std::to_string(next) + " in sweep " + std::to_string(sweep + 1));
    }
    const double gain = next - value;
    value = next;
    if (gain <= cfg.tol * std::max(1.0, std::abs(value))) break;
  }
  return g;
}

RoundingResult cw_round(const GramFactor& g, const QuadraticObjective& q, const SdpConfig& cfg) {
  validate(cfg);
  if (g.n != q.size()) throw ValidationError("gram factor and objective differ in size");
  RoundingResult best;
  best.signs.assign(g.n, Sign{1});
  best.achieved = quadratic_value(q, best.signs);
  if (g.n == 0 || q.all_zero()) {
    best.candidates = 1;
    return best;
  }
  bool have = false;
  std::vector<double> proj(g.n);
  std::vector<Sign> x(g.n);
  std::vector<double> gauss(static_cast<std::size_t>(g.rank));
  std::vector<double> thresholds{0.0};
  for (double t : cfg.t_grid) {
    if (t > 0.0) thresholds.push_back(t);
  }
  std::size_t candidate = 0;
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng(derive_seed(cfg.seed, {0xc3, static_cast<std::uint64_t>(trial)}));
    for (double& z : gauss) z = rng.normal();
    for (std::uint32_t i = 0; i < g.n; ++i) {
      const auto v = g.vec(i);
      double s = 0.0;
      for (std::size_t c = 0; c < v.size(); ++c) s += v[c] * gauss[c];
      proj[i] = s;
    }
    for (double t : thresholds) {
      for (std::uint32_t i = 0; i < g.n; ++i) {
        if (t == 0.0) {
          x[i] = proj[i] >= 0.0 ? Sign{1} : Sign{-1};
        } else {
          const double y = std::clamp(proj[i] / t, -1.0, 1.0);
          x[i] = rng.uniform() < (1.0 + y) / 2.0 ? Sign{1} : Sign{-1};
        }
      }
      const double value = quadratic_value(q, x);
      if (!have || value > best.achieved) {
        have = true;
        best.signs = x;
        best.achieved = value;
        best.threshold = t;
        best.candidate = candidate;
      }
      ++candidate;
    }
  }
  best.candidates = candidate;
  return best;
}

IndexedObjective from_bilinear_poly(const MultilinearPoly& p) {
  IndexedObjective out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() != 2) {
      std::string name;
      for (const auto& v : m.vars()) name += (name.empty() ? "" : "*") + var_name(v);
      throw ValidationError("bilinear flattening met degree-" + std::to_string(m.degree()) +
                            " monomial '" + (name.empty() ? "1" : name) + "'");
    }
    for (const Var& v : m.vars()) out.index.emplace(v, 0);
  }
  for (auto& [v, idx] : out.index) {
    idx = static_cast<std::uint32_t>(out.vars.size());
    out.vars.push_back(v);
  }
  out.objective = QuadraticObjective(static_cast<std::uint32_t>(out.vars.size()));
  for (const auto& [m, c] : p.terms()) {
    out.objective.add(out.index.at(m.vars()[0]), out.index.at(m.vars()[1]), to_double(c));
  }
  return out;
}

}  // namespace mx3
