#pragma once

#include "mx3/instance.hpp"

#include <cstdint>

namespace mx3 {

struct PlantedInstance {
  Instance instance;
  Assignment planted;
  std::size_t corrupted = 0;
};

// XOR constraints satisfied by a hidden uniform assignment; exactly
// round(eps * m) of them (chosen uniformly) get their right-hand side
// flipped, so the plant scores 1 - round(eps * m) / m.
PlantedInstance planted_instance(const BlockSizes& sizes, std::size_t m, double eps, std::uint64_t seed);

// XOR constraints with uniform indices and uniform literal signs.
Instance random_instance(const BlockSizes& sizes, std::size_t m, std::uint64_t seed);

}  // namespace mx3
