#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "perco/rng.hpp"

namespace perco {

// An explicit event on {0,1}^n as a membership bitset over all 2^n
// configurations. This module is an exactness oracle, not a production path:
// n is capped and everything is computed by full enumeration.
class CubeEvent {
 public:
  static constexpr int kMaxDim = 20;

  CubeEvent() = default;
  explicit CubeEvent(int n);

  int dim() const { return n_; }
  std::uint64_t card() const;  // number of member configurations

  bool test(std::uint64_t w) const { return (bits_[w >> 6] >> (w & 63)) & 1u; }
  void set(std::uint64_t w, bool v = true);

  static CubeEvent full(int n);
  static CubeEvent empty(int n) { return CubeEvent(n); }
  // Membership bits hex-encoded, little-endian in the configuration index
  // (bit i of byte i/8). Used by test fixtures.
  static CubeEvent from_hex(int n, const std::string& hex);
  std::string to_hex() const;

  const std::vector<std::uint64_t>& words() const { return bits_; }
  std::vector<std::uint64_t>& words() { return bits_; }

  friend bool operator==(const CubeEvent& a, const CubeEvent& b) {
    return a.n_ == b.n_ && a.bits_ == b.bits_;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Exact image of A under bit flip (omega -> 1-omega); an involution.
CubeEvent flip_event(const CubeEvent& a);

// Exact disjoint occurrence A o B: membership computed for every
// configuration by closing over all witness index sets S. Capped at n <= 14.
CubeEvent disjoint_occurrence(const CubeEvent& a, const CubeEvent& b);

// Smallest witness set S (lexicographically; encoded as a bitmask) for a
// configuration in A o B, or -1 when the configuration is not a member.
std::int64_t disjoint_occurrence_witness(const CubeEvent& a, const CubeEvent& b, std::uint64_t w);

struct ReimerRecord {
  std::uint64_t lhs = 0;  // |A o B|
  std::uint64_t rhs = 0;  // |A & flip(B)|
  bool holds = false;
  bool flip_symmetric = false;  // |A & flip(B)| == |flip(A) & B|
};
// |A o B| <= |A & flip(B)| = |flip(A) & B|, exact cardinalities.
ReimerRecord check_reimer(const CubeEvent& a, const CubeEvent& b);

struct ProductBoundRecord {
  std::uint64_t lhs = 0;  // 2^n * |event|
  std::uint64_t rhs = 0;  // |A| * |B|
  bool holds = false;
};
// BK form: 2^n * |A o B| <= |A| * |B|.
ProductBoundRecord check_bk(const CubeEvent& a, const CubeEvent& b);

// Harris/FKG for A increasing and B decreasing: 2^n * |A & B| <= |A| * |B|.
// Monotonicity is verified over every hypercube edge first; a violation
// raises std::domain_error naming the edge.
ProductBoundRecord check_harris(const CubeEvent& a, const CubeEvent& b);

bool is_increasing(const CubeEvent& a, std::uint64_t* bad_w = nullptr, int* bad_bit = nullptr);
bool is_decreasing(const CubeEvent& a, std::uint64_t* bad_w = nullptr, int* bad_bit = nullptr);

// Random events for property tests.
CubeEvent random_event(int n, double density, SplitMix64& rng);
CubeEvent random_increasing_event(int n, int generators, SplitMix64& rng);
CubeEvent random_decreasing_event(int n, int generators, SplitMix64& rng);

}  // namespace perco
