#include <stdexcept>

#include "doctest.h"
#include "perco/boolcube.hpp"

using namespace perco;

namespace {

CubeEvent coord_event(int n, int bit) {
  CubeEvent e(n);
  for (std::uint64_t w = 0; w < (1ull << n); ++w)
    if ((w >> bit) & 1) e.set(w);
  return e;
}

}  // namespace

TEST_SUITE_BEGIN("boolcube");

TEST_CASE("disjoint occurrence basics") {
  CubeEvent full = CubeEvent::full(3);
  CHECK(disjoint_occurrence(full, full) == full);

  CubeEvent a1 = coord_event(1, 0);
  CHECK(disjoint_occurrence(a1, a1).card() == 0);

  CubeEvent a = coord_event(2, 0), b = coord_event(2, 1);
  CubeEvent ab = disjoint_occurrence(a, b);
  CHECK(ab.card() == 1);
  CHECK(ab.test(3));  // only (1,1)
}

TEST_CASE("disjoint occurrence is contained in the intersection") {
  SplitMix64 rng(8);
  for (int t = 0; t < 200; ++t) {
    int n = 3 + static_cast<int>(rng.below(4));
    CubeEvent a = random_event(n, rng.uniform(), rng);
    CubeEvent b = random_event(n, rng.uniform(), rng);
    CubeEvent ab = disjoint_occurrence(a, b);
    for (std::uint64_t w = 0; w < (1ull << n); ++w)
      if (ab.test(w)) {
        CHECK(a.test(w));
        CHECK(b.test(w));
      }
  }
}

TEST_CASE("disjoint-support events compose exactly") {
  // A depends on bits {0,1}, B on bits {2,3}: A o B = A & B.
  SplitMix64 rng(9);
  for (int t = 0; t < 50; ++t) {
    CubeEvent a(4), b(4);
    std::uint64_t pa = rng.next() & 0xF, pb = rng.next() & 0xF;
    for (std::uint64_t w = 0; w < 16; ++w) {
      if ((pa >> (w & 3)) & 1) a.set(w);
      if ((pb >> ((w >> 2) & 3)) & 1) b.set(w);
    }
    CubeEvent ab = disjoint_occurrence(a, b);
    for (std::uint64_t w = 0; w < 16; ++w) CHECK(ab.test(w) == (a.test(w) && b.test(w)));
  }
}

TEST_CASE("witness search agrees with membership") {
  SplitMix64 rng(10);
  CubeEvent a = random_event(4, 0.4, rng);
  CubeEvent b = random_event(4, 0.6, rng);
  CubeEvent ab = disjoint_occurrence(a, b);
  for (std::uint64_t w = 0; w < 16; ++w) {
    std::int64_t s = disjoint_occurrence_witness(a, b, w);
    CHECK((s >= 0) == ab.test(w));
  }
}

TEST_CASE("flip event properties") {
  CubeEvent full = CubeEvent::full(4);
  CHECK(flip_event(full) == full);
  CubeEvent ones(3);
  ones.set(7);
  CubeEvent zeros = flip_event(ones);
  CHECK(zeros.card() == 1);
  CHECK(zeros.test(0));
  SplitMix64 rng(11);
  for (int t = 0; t < 50; ++t) {
    CubeEvent e = random_event(5, rng.uniform(), rng);
    CHECK(flip_event(e).card() == e.card());
    CHECK(flip_event(flip_event(e)) == e);
  }
}

TEST_CASE("reimer inequality record") {
  CubeEvent full = CubeEvent::full(3);
  ReimerRecord r = check_reimer(full, full);
  CHECK(r.lhs == 8);
  CHECK(r.rhs == 8);
  CHECK(r.holds);

  CubeEvent a1 = coord_event(1, 0);
  ReimerRecord r1 = check_reimer(a1, a1);
  CHECK(r1.lhs == 0);
  CHECK(r1.rhs == 0);
  CHECK(r1.holds);
}

TEST_CASE("reimer holds exhaustively at n = 2") {
  for (std::uint32_t abits = 0; abits < 16; ++abits) {
    CubeEvent a(2);
    for (int w = 0; w < 4; ++w)
      if ((abits >> w) & 1) a.set(static_cast<std::uint64_t>(w));
    for (std::uint32_t bbits = 0; bbits < 16; ++bbits) {
      CubeEvent b(2);
      for (int w = 0; w < 4; ++w)
        if ((bbits >> w) & 1) b.set(static_cast<std::uint64_t>(w));
      ReimerRecord r = check_reimer(a, b);
      CHECK(r.holds);
      CHECK(r.flip_symmetric);
    }
  }
}

TEST_CASE("bk inequality on random monotone pairs") {
  CubeEvent full = CubeEvent::full(4);
  ProductBoundRecord eq = check_bk(full, full);
  CHECK(eq.lhs == eq.rhs);

  CubeEvent a = coord_event(2, 0), b = coord_event(2, 1);
  ProductBoundRecord r = check_bk(a, b);
  CHECK(r.lhs == 4);
  CHECK(r.rhs == 4);
  CHECK(r.holds);

  SplitMix64 rng(12);
  for (int t = 0; t < 2000; ++t) {
    CubeEvent ma = random_increasing_event(4, 1 + static_cast<int>(rng.below(4)), rng);
    CubeEvent mb = random_increasing_event(4, 1 + static_cast<int>(rng.below(4)), rng);
    CHECK(check_bk(ma, mb).holds);
  }
}

TEST_CASE("harris inequality and monotonicity preconditions") {
  CubeEvent full = CubeEvent::full(3);
  ProductBoundRecord eq = check_harris(full, full);
  CHECK(eq.lhs == eq.rhs);

  CubeEvent inc = coord_event(2, 0);
  CubeEvent dec = flip_event(inc);  // {bit0 = 0}
  ProductBoundRecord r = check_harris(inc, dec);
  CHECK(r.lhs == 0);
  CHECK(r.rhs == 4);
  CHECK(r.holds);

  CHECK_THROWS_AS(check_harris(dec, dec), std::domain_error);

  SplitMix64 rng(13);
  for (int t = 0; t < 2000; ++t) {
    CubeEvent a = random_increasing_event(5, 1 + static_cast<int>(rng.below(5)), rng);
    CubeEvent b = random_decreasing_event(5, 1 + static_cast<int>(rng.below(5)), rng);
    CHECK(check_harris(a, b).holds);
  }
}

TEST_CASE("hex round trip") {
  SplitMix64 rng(14);
  for (int n : {1, 3, 4, 7}) {
    CubeEvent e = random_event(n, 0.5, rng);
    CubeEvent back = CubeEvent::from_hex(n, e.to_hex());
    CHECK(back == e);
  }
  CHECK_THROWS_AS(CubeEvent::from_hex(2, "zz"), std::invalid_argument);
}

TEST_CASE("capacity limits") {
  CHECK_THROWS_AS(CubeEvent(25), std::length_error);
  CubeEvent big(15), other(15);
  CHECK_THROWS_AS(disjoint_occurrence(big, other), std::length_error);
  CubeEvent a(3), b(4);
  CHECK_THROWS_AS(check_reimer(a, b), std::invalid_argument);
}

TEST_SUITE_END();
