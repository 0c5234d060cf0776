#pragma once

#include "mx3/instance.hpp"
#include "mx3/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mx3 {

// A +-1 variable: block (1-based) and index within it (1-based).
struct Var {
  int block = 1;
  std::uint32_t index = 1;

  friend constexpr auto operator<=>(const Var&, const Var&) = default;
  friend constexpr bool operator==(const Var&, const Var&) = default;
};

// Product of distinct variables, kept sorted. The empty monomial is the
// constant 1.
class Monomial {
 public:
  Monomial() = default;
  // Throws ValidationError on duplicate variables.
  explicit Monomial(std::vector<Var> vars);

  const std::vector<Var>& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<Var> vars_;
};

// Sparse multilinear polynomial over +-1 variables with exact coefficients.
// Zero coefficients are never stored.
class MultilinearPoly {
 public:
  using Terms = std::map<Monomial, Rational>;

  MultilinearPoly() = default;

  void add(const Monomial& m, const Rational& coeff);
  Rational coeff(const Monomial& m) const;

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_degree() const;

  MultilinearPoly& operator+=(const MultilinearPoly& other);
  MultilinearPoly& operator*=(const Rational& factor);

  friend bool operator==(const MultilinearPoly&, const MultilinearPoly&) = default;

 private:
  Terms terms_;
};

MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b);

// Walsh expansion of a 3-ary predicate over y1 = (1,1), y2 = (2,1),
// y3 = (3,1). Coefficients are multiples of 1/8.
MultilinearPoly predicate_fourier(Predicate3 pred);

// Fourier expansion of the satisfied-weight fraction, weights normalized by
// the exact total W and literal signs folded into the coefficients.
MultilinearPoly instance_objective(const Instance& inst);

MultilinearPoly degree_slice(const MultilinearPoly& p, std::size_t degree);

// Throws ValidationError if a monomial variable is not covered by `a`.
Rational eval_poly_exact(const MultilinearPoly& p, const Assignment& a);
double eval_poly(const MultilinearPoly& p, const Assignment& a);

// Sorted `coeff num/den : x1_3 x2_1 x3_7` lines.
std::string dump(const MultilinearPoly& p);

std::string var_name(const Var& v);

}  // namespace mx3
