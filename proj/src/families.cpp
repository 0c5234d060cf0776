#include "mx3/families.hpp"

#include "mx3/error.hpp"
#include "mx3/rng.hpp"

#include <cmath>
#include <numeric>

namespace mx3 {

namespace {

void check_family(const BlockSizes& sizes, std::size_t m) {
  if (sizes[0] < 1 || sizes[1] < 1 || sizes[2] < 1) throw ValidationError("block sizes must be positive");
  if (m < 1) throw ValidationError("a family instance needs at least one constraint");
}

Constraint random_xor(const BlockSizes& sizes, Rng& rng) {
  Constraint c;
  for (int b = 0; b < 3; ++b) {
    const auto bu = static_cast<std::size_t>(b);
    c.lits[bu] = Literal{b + 1, static_cast<std::uint32_t>(rng.below(sizes[bu]) + 1),
                         static_cast<Sign>(rng.sign())};
  }
  c.weight = 1.0;
  c.pred = kXorPredicate;
  return c;
}

}  // namespace

PlantedInstance planted_instance(const BlockSizes& sizes, std::size_t m, double eps, std::uint64_t seed) {
  check_family(sizes, m);
  if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in [0, 1]");
  Rng rng(derive_seed(seed, {0x91a7}));
  Assignment plant = Assignment::all_plus(sizes);
  for (auto& block : plant.values) {
    for (auto& v : block) v = static_cast<Sign>(rng.sign());
  }
  std::vector<Constraint> cons;
  cons.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Constraint c = random_xor(sizes, rng);
    int product = 1;
    for (const auto& lit : c.lits) product *= lit.sign * plant.at(lit.block, lit.index);
    if (product < 0) c.lits[2].sign = static_cast<Sign>(-c.lits[2].sign);
    cons.push_back(c);
  }
  const auto corrupted = static_cast<std::size_t>(std::llround(eps * static_cast<double>(m)));
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  shuffle(order.begin(), order.end(), rng);
  for (std::size_t i = 0; i < corrupted; ++i) {
    auto& lit = cons[order[i]].lits[2];
    lit.sign = static_cast<Sign>(-lit.sign);
  }
  return PlantedInstance{Instance(sizes, std::move(cons)), std::move(plant), corrupted};
}

Instance random_instance(const BlockSizes& sizes, std::size_t m, std::uint64_t seed) {
  check_family(sizes, m);
  Rng rng(derive_seed(seed, {0x7a4d}));
  std::vector<Constraint> cons;
  cons.reserve(m);
  for (std::size_t i = 0; i < m; ++i) cons.push_back(random_xor(sizes, rng));
  return Instance(sizes, std::move(cons));
}

}  // namespace mx3
