#include "mx3/fourier.hpp"

#include "mx3/error.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace mx3 {

Monomial::Monomial(std::vector<Var> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  if (std::adjacent_find(vars_.begin(), vars_.end()) != vars_.end()) {
    throw ValidationError("monomial repeats a variable");
  }
}

void MultilinearPoly::add(const Monomial& m, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational MultilinearPoly::coeff(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::size_t MultilinearPoly::max_degree() const {
  std::size_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

MultilinearPoly& MultilinearPoly::operator+=(const MultilinearPoly& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

MultilinearPoly& MultilinearPoly::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= factor;
  return *this;
}

MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) {
  a += b;
  return a;
}

namespace {

// Coefficient of the subset `subset` (bit 2 = y1, bit 1 = y2, bit 0 = y3):
// (1/8) sum_y pred(y) prod_{i in subset} y_i.
std::array<Rational, 8> walsh_coefficients(Predicate3 pred) {
  std::array<Rational, 8> out;
  for (unsigned subset = 0; subset < 8; ++subset) {
    long long acc = 0;
    for (unsigned code = 0; code < 8; ++code) {
      if (!((pred.mask >> code) & 1U)) continue;
      // Character value is -1 iff an odd number of subset coordinates are -1.
      const unsigned odd = static_cast<unsigned>(__builtin_popcount(code & subset)) & 1U;
      acc += odd ? -1 : 1;
    }
    out[subset] = Rational(acc, 8);
  }
  return out;
}

}  // namespace

MultilinearPoly predicate_fourier(Predicate3 pred) {
  const auto coeffs = walsh_coefficients(pred);
  MultilinearPoly p;
  for (unsigned subset = 0; subset < 8; ++subset) {
    std::vector<Var> vars;
    for (int i = 0; i < 3; ++i) {
      if ((subset >> (2 - i)) & 1U) vars.push_back(Var{i + 1, 1});
    }
    p.add(Monomial(std::move(vars)), coeffs[subset]);
  }
  return p;
}

MultilinearPoly instance_objective(const Instance& inst) {
  std::array<std::array<Rational, 8>, 256> cache;
  std::array<bool, 256> cached{};
  Rational total(0);
  MultilinearPoly p;
  for (const Constraint& c : inst.constraints()) {
    if (c.weight == 0.0) continue;
    const Rational w = rational_from_double(c.weight);
    total += w;
    if (!cached[c.pred.mask]) {
      cache[c.pred.mask] = walsh_coefficients(c.pred);
      cached[c.pred.mask] = true;
    }
    const auto& coeffs = cache[c.pred.mask];
    for (unsigned subset = 0; subset < 8; ++subset) {
      if (coeffs[subset] == 0) continue;
      std::vector<Var> vars;
      int sign = 1;
      for (int i = 0; i < 3; ++i) {
        if ((subset >> (2 - i)) & 1U) {
          const Literal& lit = c.lits[static_cast<std::size_t>(i)];
          vars.push_back(Var{lit.block, lit.index});
          sign *= lit.sign;
        }
      }
      p.add(Monomial(std::move(vars)), sign > 0 ? Rational(coeffs[subset] * w)
                                                : Rational(-coeffs[subset] * w));
    }
  }
  p *= Rational(1) / total;
  return p;
}

MultilinearPoly degree_slice(const MultilinearPoly& p, std::size_t degree) {
  MultilinearPoly out;
  for (const auto& [m, c] : p.terms()) {
    if (m.degree() == degree) out.add(m, c);
  }
  return out;
}

Rational eval_poly_exact(const MultilinearPoly& p, const Assignment& a) {
  Rational sum(0);
  for (const auto& [m, c] : p.terms()) {
    int sign = 1;
    for (const Var& v : m.vars()) {
      if (v.block < 1 || static_cast<std::size_t>(v.block) > a.num_blocks() || v.index < 1 ||
          v.index > a.values[static_cast<std::size_t>(v.block - 1)].size()) {
        throw ValidationError("unbound variable " + var_name(v));
      }
      sign *= a.at(v.block, v.index);
    }
    if (sign > 0) {
      sum += c;
    } else {
      sum -= c;
    }
  }
  return sum;
}

double eval_poly(const MultilinearPoly& p, const Assignment& a) {
  return to_double(eval_poly_exact(p, a));
}

std::string var_name(const Var& v) {
  return "x" + std::to_string(v.block) + "_" + std::to_string(v.index);
}

std::string dump(const MultilinearPoly& p) {
  std::ostringstream out;
  for (const auto& [m, c] : p.terms()) {
    out << "coeff " << to_string(c) << " :";
    for (const Var& v : m.vars()) out << ' ' << var_name(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace mx3
