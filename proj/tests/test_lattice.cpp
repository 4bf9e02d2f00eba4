#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "perco/lattice.hpp"
#include "perco/rng.hpp"

using namespace perco;

namespace {

// Independent enumeration oracle: scan an axial box and test the Euclidean
// radius with floating-point arithmetic.
std::set<std::pair<int, int>> disc_sites_oracle(double radius) {
  std::set<std::pair<int, int>> out;
  int b = static_cast<int>(2 * radius) + 3;
  for (int r = -b; r <= b; ++r)
    for (int q = -b; q <= b; ++q) {
      double x = q + 0.5 * r, y = std::sqrt(3.0) / 2.0 * r;
      if (std::sqrt(x * x + y * y) <= radius + 1e-12) out.insert({q, r});
    }
  return out;
}

int external_boundary_count_oracle(int n) {
  auto inside = disc_sites_oracle(n);
  std::set<std::pair<int, int>> boundary;
  for (auto [q, r] : inside)
    for (const Site& d : kNeighborOffsets) {
      std::pair<int, int> t{q + d.q, r + d.r};
      if (!inside.count(t)) boundary.insert(t);
    }
  return static_cast<int>(boundary.size());
}

}  // namespace

TEST_SUITE_BEGIN("lattice");

TEST_CASE("annulus 0,1 is the six neighbors of the origin") {
  Annulus a = Annulus::build(0, 1);
  CHECK(a.size() == 6);
  CHECK(a.inner_boundary().size() == 6);
  CHECK(a.outer_boundary().size() == 6);
  for (const Site& d : kNeighborOffsets) CHECK(a.contains(d));
}

TEST_CASE("annulus site set matches the enumeration oracle") {
  for (auto [n, N] : {std::pair{2, 5}, std::pair{0, 3}, std::pair{4, 9}}) {
    Annulus a = Annulus::build(n, N);
    auto big = disc_sites_oracle(N), small = disc_sites_oracle(n);
    std::set<std::pair<int, int>> expect;
    for (auto s : big)
      if (!small.count(s)) expect.insert(s);
    CHECK(a.size() == static_cast<int>(expect.size()));
    for (auto [q, r] : expect) CHECK(a.contains(Site{q, r}));
  }
}

TEST_CASE("empty annulus is rejected") {
  CHECK_THROWS_AS(Annulus::build(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(Annulus::build(5, 2), std::invalid_argument);
}

TEST_CASE("site order is lexicographic in (r, q)") {
  Annulus a = Annulus::build(1, 6);
  for (int i = 1; i < a.size(); ++i) CHECK(a.site(i - 1) < a.site(i));
}

TEST_CASE("neighbor counts: interior six, rim fewer") {
  Annulus a = Annulus::build(2, 8);
  Site interior{5, 0};
  REQUIRE(a.contains(interior));
  CHECK(neighbors(a, interior).size() == 6);
  Site rim{8, 0};
  REQUIRE(a.contains(rim));
  CHECK(neighbors(a, rim).size() < 6);
  CHECK_THROWS_AS(neighbors(a, Site{0, 0}), std::invalid_argument);
}

TEST_CASE("adjacency symmetry on random pairs") {
  Annulus a = Annulus::build(1, 9);
  SplitMix64 rng(7);
  for (int t = 0; t < 1000; ++t) {
    int i = static_cast<int>(rng.below(a.size()));
    for (const std::int32_t* p = a.neighbors_begin(i); p != a.neighbors_end(i); ++p) {
      bool back = false;
      for (const std::int32_t* q = a.neighbors_begin(*p); q != a.neighbors_end(*p); ++q)
        if (*q == i) back = true;
      CHECK(back);
    }
  }
}

TEST_CASE("boundary flags match their definitions") {
  Annulus a = Annulus::build(2, 6);
  std::int64_t n2 = a.inner_radius2(), N2 = a.outer_radius2();
  for (int i = 0; i < a.size(); ++i) {
    Site s = a.site(i);
    bool inner = false, outer = false;
    for (const Site& d : kNeighborOffsets) {
      std::int64_t m = norm2(Site{s.q + d.q, s.r + d.r});
      inner = inner || m <= n2;
      outer = outer || m > N2;
    }
    CHECK(a.is_inner_boundary(i) == inner);
    CHECK(a.is_outer_boundary(i) == outer);
  }
}

TEST_CASE("min_inner_radius against the boundary-count oracle") {
  CHECK(min_inner_radius(1) == 0);
  CHECK(min_inner_radius(6) == 0);
  int j = 7;
  int expect = 0;
  while (external_boundary_count_oracle(expect) < j) ++expect;
  CHECK(min_inner_radius(j) == expect);
  for (int jj : {2, 12, 13, 20}) {
    int e = 0;
    while (external_boundary_count_oracle(e) < jj) ++e;
    CHECK(min_inner_radius(jj) == e);
  }
  CHECK_THROWS_AS(min_inner_radius(0), std::invalid_argument);
}

TEST_CASE("site arguments at the axes") {
  CHECK(site_argument(Site{1, 0}) == doctest::Approx(0.0));
  CHECK(site_argument(Site{-1, 0}) == doctest::Approx(3.14159265358979));
  CHECK(site_argument(Site{0, 1}) == doctest::Approx(3.14159265358979 / 3.0));
  CHECK_THROWS_AS(site_argument(Site{0, 0}), std::invalid_argument);
}

TEST_CASE("crossing numbers wind once around the hexagon ring") {
  // Counterclockwise unit hexagon crosses the positive-x cut exactly once.
  std::vector<Site> ring{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
  int total = 0;
  for (std::size_t i = 0; i < ring.size(); ++i)
    total += crossing_number(ring[i], ring[(i + 1) % ring.size()]);
  CHECK(total == 1);
}

TEST_SUITE_END();
