#include "mx3/error.hpp"
#include "mx3/fourier.hpp"
#include "mx3/oracle.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace mx3;
using namespace mx3::testing;

TEST_CASE("brute force matches exhaustive enumeration") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const BlockSizes sizes{1 + static_cast<std::uint32_t>(s % 3), 2, 1 + static_cast<std::uint32_t>(s % 4)};
    const auto inst = random_test_instance(sizes, 3 + s % 9, 300 + s, s % 2 == 0);
    const auto r = brute_force(inst, 1 + s % 3);
    CHECK(r.optimum == doctest::Approx(exhaustive_optimum(inst)).epsilon(1e-12));
    CHECK(evaluate(inst, r.assignment) == doctest::Approx(r.optimum).epsilon(1e-12));
    CHECK(r.optimal_count >= 1);
  }
}

TEST_CASE("contradictory pair") {
  const Literal a{1, 1, 1}, b{2, 1, 1}, c{3, 1, 1};
  const Instance inst({1, 1, 1}, {Constraint{{a, b, c}, 1.0, kXorPredicate},
                                  Constraint{{a, b, c}, 1.0, kXorComplement}});
  const auto r = brute_force(inst);
  CHECK(r.optimum == 0.5);
  CHECK(r.optimal_count == 8);
  CHECK(r.assignment.values == Assignment::all_plus(BlockSizes{1, 1, 1}).values);
}

TEST_CASE("thread count does not change the answer") {
  const auto inst = random_test_instance({5, 5, 5}, 40, 12);
  const auto one = brute_force(inst, 1);
  const auto many = brute_force(inst, 4);
  CHECK(one.optimum == many.optimum);
  CHECK(one.assignment.values == many.assignment.values);
  CHECK(one.optimal_count == many.optimal_count);
}

TEST_CASE("cap") {
  const auto inst = random_test_instance({9, 9, 9}, 10, 1);
  CHECK_THROWS_AS(brute_force(inst), CapError);
}

TEST_CASE("invariances") {
  const auto inst = random_test_instance({3, 3, 3}, 20, 44);
  const double opt = brute_force(inst).optimum;
  CHECK(brute_force(inst.scaled(3.0)).optimum == doctest::Approx(opt).epsilon(1e-12));
  CHECK(brute_force(inst.canonical()).optimum == doctest::Approx(opt).epsilon(1e-12));
  // Flipping the sign of every literal on variable x1_1 is a relabeling.
  std::vector<Constraint> cons = inst.constraints();
  for (auto& c : cons) {
    if (c.lits[0].index == 1) c.lits[0].sign = static_cast<Sign>(-c.lits[0].sign);
  }
  CHECK(brute_force(Instance(inst.sizes(), cons)).optimum == doctest::Approx(opt).epsilon(1e-12));
}

TEST_CASE("exhaustive poly check") {
  for (unsigned mask = 0; mask < 256; ++mask) {
    CHECK(exhaustive_poly_check(Predicate3{static_cast<std::uint8_t>(mask)}));
  }
  MultilinearPoly mutated = predicate_fourier(kXorPredicate);
  mutated.add(Monomial({Var{1, 1}}), Rational(1, 8));
  CHECK_FALSE(exhaustive_poly_check(kXorPredicate, mutated));
  CHECK(exhaustive_poly_check(kXorPredicate, predicate_fourier(kXorPredicate)));
}

TEST_CASE("best random") {
  const auto inst = random_test_instance({4, 4, 4}, 30, 9);
  const double opt = brute_force(inst).optimum;
  const double few = best_random(inst, 10, 5);
  const double many = best_random(inst, 1000, 5);
  CHECK(few <= many);
  CHECK(many <= opt + 1e-12);
}
