#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mx3 {

// Values in G = {+1, -1}; +1 stands for false, -1 for true.
using Sign = std::int8_t;

// Tuple (z1, z2, z3) in G^3 as a 3-bit number: +1 -> 0, -1 -> 1, z1 most
// significant.
constexpr unsigned tuple_code(int z1, int z2, int z3) {
  return (static_cast<unsigned>(z1 < 0) << 2) | (static_cast<unsigned>(z2 < 0) << 1) |
         static_cast<unsigned>(z3 < 0);
}

constexpr int code_coordinate(unsigned code, int coordinate) {
  return ((code >> (2 - coordinate)) & 1U) ? -1 : 1;
}

struct Predicate3 {
  std::uint8_t mask = 0;

  constexpr bool accepts(int z1, int z2, int z3) const {
    return (mask >> tuple_code(z1, z2, z3)) & 1U;
  }
  constexpr int popcount() const {
    int c = 0;
    for (unsigned b = 0; b < 8; ++b) c += (mask >> b) & 1U;
    return c;
  }
  double density() const { return popcount() / 8.0; }

  friend constexpr bool operator==(Predicate3, Predicate3) = default;
  friend constexpr auto operator<=>(Predicate3, Predicate3) = default;
};

// C = G3 u G1: tuples with z1*z2*z3 = +1 (codes 0, 3, 5, 6).
inline constexpr Predicate3 kXorPredicate{0x69};
// Product -1, the complement of C.
inline constexpr Predicate3 kXorComplement{0x96};

struct Literal {
  int block = 1;            // 1, 2 or 3
  std::uint32_t index = 1;  // 1-based within the block
  Sign sign = 1;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct Constraint {
  std::array<Literal, 3> lits;
  double weight = 1.0;
  Predicate3 pred = kXorPredicate;

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

using BlockSizes = std::array<std::uint32_t, 3>;

// +-1 values per block. Block b (1-based) lives in values[b - 1]; index i
// (1-based) in values[b - 1][i - 1]. Instances use three blocks; derived
// programs may add more (product variables).
struct Assignment {
  std::vector<std::vector<Sign>> values;

  Assignment() = default;
  explicit Assignment(std::vector<std::vector<Sign>> v) : values(std::move(v)) {}

  static Assignment all_plus(std::span<const std::uint32_t> sizes);

  Sign at(int block, std::uint32_t index) const;
  Sign& at(int block, std::uint32_t index);
  std::size_t num_blocks() const { return values.size(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Tripartite weighted Max-C instance. Immutable once constructed.
class Instance {
 public:
  // Throws ValidationError on out-of-range literals, bad blocks, negative
  // weights, or a non-positive total weight.
  Instance(BlockSizes sizes, std::vector<Constraint> constraints);

  const BlockSizes& sizes() const { return sizes_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  double total_weight() const { return total_weight_; }
  std::size_t num_vars() const { return std::size_t{sizes_[0]} + sizes_[1] + sizes_[2]; }

  bool xor_only() const;

  // Sorted by the canonical order used for serialization.
  Instance canonical() const;

  Instance scaled(double factor) const;

 private:
  BlockSizes sizes_;
  std::vector<Constraint> constraints_;
  double total_weight_ = 0.0;
};

// Satisfied weight fraction. Throws ValidationError on dimension mismatch.
double evaluate(const Instance& inst, const Assignment& a);

// Unnormalized satisfied weight; no dimension checks beyond debug asserts.
double satisfied_weight(const Instance& inst, const Assignment& a);

Assignment random_assignment(const BlockSizes& sizes, std::uint64_t key, std::uint64_t trial);

// Monte Carlo mean of evaluate over uniform assignments.
double random_baseline(const Instance& inst, std::uint64_t trials, std::uint64_t seed);

// Text format:
//   c <comment>
//   p mx3 <M> <N2> <N3> <num_constraints>
//   d pred <id> <mask>
//   <weight> <+-i1> <+-j2> <+-k3> <pred-id>
Instance parse_instance(std::string_view text);
std::string serialize(const Instance& inst, std::span<const std::string> comments = {});

Instance read_instance_file(const std::string& path);
void write_instance_file(const std::string& path, const Instance& inst,
                         std::span<const std::string> comments = {});

std::string format_weight(double w);

}  // namespace mx3
