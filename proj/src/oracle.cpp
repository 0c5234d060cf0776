#include "mx3/oracle.hpp"

#include "mx3/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>
#include <vector>

namespace mx3 {

namespace {

using Weight = __int128;

struct PackedConstraint {
  std::array<std::uint32_t, 3> bit;  // state bit of each literal's variable
  std::array<std::uint8_t, 3> neg;   // 1 if the literal sign is -1
  std::uint8_t mask;
  Weight weight;
};

// Weights as exact integer multiples of the smallest binary unit present.
std::vector<Weight> fixed_point_weights(const Instance& inst) {
  int emin = 0;
  bool first = true;
  for (const auto& c : inst.constraints()) {
    if (c.weight == 0.0) continue;
    int e = 0;
    std::frexp(c.weight, &e);
    const int low = e - 53;
    emin = first ? low : std::min(emin, low);
    first = false;
  }
  std::vector<Weight> out;
  out.reserve(inst.constraints().size());
  const int headroom = 126 - (std::bit_width(inst.constraints().size()) + 1);
  for (const auto& c : inst.constraints()) {
    if (c.weight == 0.0) {
      out.push_back(0);
      continue;
    }
    int e = 0;
    const double mant = std::frexp(c.weight, &e);
    const auto m = static_cast<long long>(std::ldexp(mant, 53));
    const int shift = e - 53 - emin;
    if (shift + 53 > headroom) {
      throw ValidationError("constraint weights span too many binary orders for exact enumeration");
    }
    out.push_back(static_cast<Weight>(m) << shift);
  }
  return out;
}

struct ChunkBest {
  Weight value = -1;
  std::uint64_t state = 0;
  std::uint64_t count = 0;
};

class Walker {
 public:
  Walker(const Instance& inst, std::size_t n) : n_(n) {
    const auto weights = fixed_point_weights(inst);
    const auto& s = inst.sizes();
    const std::uint32_t offset[3] = {0, s[0], s[0] + s[1]};
    incident_.resize(n);
    for (std::size_t ci = 0; ci < inst.constraints().size(); ++ci) {
      const auto& c = inst.constraints()[ci];
      if (weights[ci] == 0) continue;
      PackedConstraint pc{};
      for (int b = 0; b < 3; ++b) {
        const auto var = offset[b] + c.lits[static_cast<std::size_t>(b)].index - 1;
        // Variable 0 is the most significant bit so integer order is lexicographic.
        pc.bit[static_cast<std::size_t>(b)] = static_cast<std::uint32_t>(n - 1 - var);
        pc.neg[static_cast<std::size_t>(b)] = c.lits[static_cast<std::size_t>(b)].sign < 0;
      }
      pc.mask = c.pred.mask;
      pc.weight = weights[ci];
      const auto idx = cons_.size();
      cons_.push_back(pc);
      for (int b = 0; b < 3; ++b) {
        auto& list = incident_[pc.bit[static_cast<std::size_t>(b)]];
        if (std::find(list.begin(), list.end(), idx) == list.end()) list.push_back(idx);
      }
    }
  }

  static bool sat(const PackedConstraint& c, std::uint64_t state) {
    const unsigned code = (static_cast<unsigned>(((state >> c.bit[0]) & 1U) ^ c.neg[0]) << 2) |
                          (static_cast<unsigned>(((state >> c.bit[1]) & 1U) ^ c.neg[1]) << 1) |
                          static_cast<unsigned>(((state >> c.bit[2]) & 1U) ^ c.neg[2]);
    return (c.mask >> code) & 1U;
  }

  // Walk every state whose top `high` bits equal `prefix`.
  ChunkBest walk(std::uint64_t prefix, std::size_t high) const {
    const std::size_t low = n_ - high;
    std::uint64_t state = prefix << low;
    Weight value = 0;
    for (const auto& c : cons_) {
      if (sat(c, state)) value += c.weight;
    }
    ChunkBest best{value, state, 1};
    const std::uint64_t steps = std::uint64_t{1} << low;
    for (std::uint64_t step = 1; step < steps; ++step) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step));
      for (auto ci : incident_[bit]) {
        if (sat(cons_[ci], state)) value -= cons_[ci].weight;
      }
      state ^= std::uint64_t{1} << bit;
      for (auto ci : incident_[bit]) {
        if (sat(cons_[ci], state)) value += cons_[ci].weight;
      }
      if (value > best.value) {
        best = ChunkBest{value, state, 1};
      } else if (value == best.value) {
        ++best.count;
        best.state = std::min(best.state, state);
      }
    }
    return best;
  }

 private:
  std::size_t n_;
  std::vector<PackedConstraint> cons_;
  std::vector<std::vector<std::size_t>> incident_;
};

}  // namespace

OracleResult brute_force(const Instance& inst, unsigned jobs) {
  const std::size_t n = inst.num_vars();
  if (n > kMaxOracleVars) {
    throw CapError("brute force limited to " + std::to_string(kMaxOracleVars) + " variables, instance has " +
                   std::to_string(n));
  }
  const Walker walker(inst, n);
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  std::size_t high = 0;
  while (high < n && high < 8 && (std::size_t{1} << high) < std::size_t{jobs} * 4) ++high;
  const std::uint64_t chunks = std::uint64_t{1} << high;

  std::vector<ChunkBest> results(chunks);
  if (jobs == 1 || chunks == 1) {
    for (std::uint64_t p = 0; p < chunks; ++p) results[p] = walker.walk(p, high);
  } else {
    std::vector<std::thread> pool;
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(jobs, chunks));
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t p = w; p < chunks; p += workers) results[p] = walker.walk(p, high);
      });
    }
    for (auto& t : pool) t.join();
  }
  ChunkBest best = results.front();
  for (std::size_t i = 1; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.value > best.value) {
      best = r;
    } else if (r.value == best.value) {
      best.count += r.count;
      best.state = std::min(best.state, r.state);
    }
  }
  OracleResult out;
  out.assignment = Assignment::all_plus(inst.sizes());
  std::size_t var = 0;
  for (auto& block : out.assignment.values) {
    for (auto& v : block) {
      v = ((best.state >> (n - 1 - var)) & 1U) ? Sign{-1} : Sign{1};
      ++var;
    }
  }
  out.optimum = evaluate(inst, out.assignment);
  out.optimal_count = best.count;
  return out;
}

bool exhaustive_poly_check(Predicate3 pred, const MultilinearPoly& poly) {
  for (const auto& [m, c] : poly.terms()) {
    for (const Var& v : m.vars()) {
      if (v.index != 1 || v.block < 1 || v.block > 3) return false;
    }
  }
  for (unsigned code = 0; code < 8; ++code) {
    const int y1 = code_coordinate(code, 0), y2 = code_coordinate(code, 1), y3 = code_coordinate(code, 2);
    const Assignment a({{static_cast<Sign>(y1)}, {static_cast<Sign>(y2)}, {static_cast<Sign>(y3)}});
    const Rational expect = pred.accepts(y1, y2, y3) ? 1 : 0;
    if (eval_poly_exact(poly, a) != expect) return false;
  }
  return true;
}

bool exhaustive_poly_check(Predicate3 pred) { return exhaustive_poly_check(pred, predicate_fourier(pred)); }

double best_random(const Instance& inst, std::uint64_t trials, std::uint64_t seed) {
  if (trials < 1) throw ValidationError("best_random needs trials >= 1");
  double best = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    best = std::max(best, satisfied_weight(inst, random_assignment(inst.sizes(), seed, t)));
  }
  return best / inst.total_weight();
}

}  // namespace mx3
