#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "perco/arms.hpp"
#include "perco/winding.hpp"

using namespace perco;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

SiteConfig solid(const Annulus& a, std::uint8_t color) {
  SiteConfig c;
  c.annulus = &a;
  c.colors.assign(static_cast<std::size_t>(a.size()), color);
  return c;
}

// Exhaustive simple-crossing enumeration (independent of the covering-graph
// implementation); calls back with each path's winding and endpoints.
template <typename Fn>
void enumerate_crossings(const SiteConfig& c, std::uint8_t color, Fn&& fn) {
  const Annulus& a = *c.annulus;
  std::vector<std::uint8_t> onpath(static_cast<std::size_t>(a.size()), 0);
  std::vector<std::int32_t> path;
  double wind = 0;
  auto dfs = [&](auto&& self, int u) -> void {
    if (a.is_outer_boundary(u)) fn(path, wind);
    for (const std::int32_t* p = a.neighbors_begin(u); p != a.neighbors_end(u); ++p) {
      int v = *p;
      if (onpath[static_cast<std::size_t>(v)] || c.colors[static_cast<std::size_t>(v)] != color)
        continue;
      double step = angle_step(a.site(u), a.site(v));
      onpath[static_cast<std::size_t>(v)] = 1;
      path.push_back(v);
      wind += step;
      self(self, v);
      wind -= step;
      path.pop_back();
      onpath[static_cast<std::size_t>(v)] = 0;
    }
  };
  for (std::int32_t s : a.inner_boundary()) {
    if (c.colors[static_cast<std::size_t>(s)] != color) continue;
    onpath[static_cast<std::size_t>(s)] = 1;
    path.push_back(s);
    wind = 0;
    dfs(dfs, s);
    path.pop_back();
    onpath[static_cast<std::size_t>(s)] = 0;
  }
}

}  // namespace

TEST_SUITE_BEGIN("winding");

TEST_CASE("straight radial path has zero winding") {
  LatticePath p{{{2, 0}, {3, 0}, {4, 0}, {5, 0}}};
  CHECK(winding_angle(p) == doctest::Approx(0.0));
}

TEST_CASE("the unit hexagon winds one full turn") {
  LatticePath p{{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}}};
  CHECK(winding_angle(p) == doctest::Approx(kTwoPi));
}

TEST_CASE("winding is antisymmetric under reversal") {
  LatticePath p{{{3, 0}, {2, 1}, {1, 2}, {0, 3}, {-1, 3}, {-1, 4}}};
  CHECK(winding_angle(reverse_path(p)) == doctest::Approx(-winding_angle(p)));
}

TEST_CASE("path validation") {
  CHECK_THROWS_AS(winding_angle(LatticePath{{}}), std::invalid_argument);
  CHECK_THROWS_AS(winding_angle(LatticePath{{{1, 0}, {0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(winding_angle(LatticePath{{{1, 0}, {3, 0}}}), std::invalid_argument);
  LatticePath simple{{{1, 0}, {2, 0}}};
  CHECK(simple.is_simple());
  LatticePath repeat{{{1, 0}, {2, 0}, {1, 0}}};
  CHECK(!repeat.is_simple());
}

TEST_CASE("cumulative angles are continuous") {
  LatticePath p{{{4, 0}, {3, 1}, {2, 2}, {1, 3}, {0, 4}, {-1, 4}}};
  auto cum = p.cumulative_angles();
  REQUIRE(cum.size() == p.sites.size());
  for (std::size_t i = 1; i < cum.size(); ++i) CHECK(std::abs(cum[i] - cum[i - 1]) < kPi / 2);
  CHECK(cum.back() - cum.front() == doctest::Approx(winding_angle(p)));
}

TEST_CASE("radial chain reaches exactly sheet zero") {
  Annulus a = Annulus::build(3, 9);
  SiteConfig c = solid(a, kWhite);
  for (int q = 4; q <= 9; ++q) c.colors[static_cast<std::size_t>(a.index_of(Site{q, 0}))] = kBlack;
  auto sheets = single_arm_winding_sheets(c, kBlack, 3 * kTwoPi);
  CHECK(sheets == std::set<int>{0});
}

TEST_CASE("all-black wide annulus reaches many sheets") {
  Annulus a = Annulus::build(1, 64);
  SiteConfig c = solid(a, kBlack);
  auto sheets = single_arm_winding_sheets(c, kBlack, 4 * kTwoPi);
  CHECK(sheets.size() >= 3);
  CHECK(sheets.count(0) == 1);
  CHECK(sheets.count(1) == 1);
  CHECK(sheets.count(-1) == 1);
}

TEST_CASE("theta_max validation") {
  Annulus a = Annulus::build(1, 4);
  SiteConfig c = solid(a, kBlack);
  CHECK_THROWS_AS(single_arm_winding_sheets(c, kBlack, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(single_arm_winding_sheets(c, kBlack, -kTwoPi), std::invalid_argument);
}

TEST_CASE("sheets cover every exhaustively enumerated crossing") {
  for (auto [n, N] : {std::pair{0, 2}, std::pair{1, 3}}) {
    Annulus a = Annulus::build(n, N);
    REQUIRE(a.size() <= 30);
    const int K = 8;
    for (int t = 0; t < 60; ++t) {
      SiteConfig c = sample_config(a, 0.5, {123, static_cast<std::uint64_t>(t)});
      for (std::uint8_t color : {kBlack, kWhite}) {
        auto sheets = single_arm_winding_sheets(c, color, K * kTwoPi);
        enumerate_crossings(c, color, [&](const std::vector<std::int32_t>& path, double wind) {
          double offset = a.site_cut_angle(path.back()) - a.site_cut_angle(path.front());
          int k = static_cast<int>(std::llround((wind - offset) / kTwoPi));
          CHECK(std::abs(wind - offset - k * kTwoPi) < 1e-6);
          if (std::abs(k) <= K) CHECK(sheets.count(k) == 1);
        });
      }
    }
  }
}

TEST_CASE("sheet zero is reachable whenever a one-arm crossing exists") {
  Annulus a = Annulus::build(2, 7);
  for (int t = 0; t < 200; ++t) {
    SiteConfig c = sample_config(a, 0.5, {321, static_cast<std::uint64_t>(t)});
    bool arm = has_one_arm(c, kBlack);
    auto sheets = single_arm_winding_sheets(c, kBlack, 6 * kTwoPi);
    CHECK(arm == !sheets.empty());
    if (arm) CHECK(sheets.count(0) == 1);
  }
}

TEST_CASE("interval completion of a single angle") {
  auto est = complete_interval({0.0});
  REQUIRE(est.components.size() == 1);
  CHECK(est.single_interval);
  CHECK(est.components[0].first == doctest::Approx(-kPi));
  CHECK(est.components[0].second == doctest::Approx(kPi));
  CHECK(est.total_length == doctest::Approx(kTwoPi));
}

TEST_CASE("abutting windows merge") {
  auto est = complete_interval({0.0, kTwoPi});
  REQUIRE(est.components.size() == 1);
  CHECK(est.components[0].first == doctest::Approx(-kPi));
  CHECK(est.components[0].second == doctest::Approx(3 * kPi));
  CHECK(est.total_length == doctest::Approx(4 * kPi));
}

TEST_CASE("distant windows stay separate") {
  auto est = complete_interval({0.0, 5 * kPi});
  CHECK(est.components.size() == 2);
  CHECK(!est.single_interval);
  CHECK(est.total_length == doctest::Approx(4 * kPi));
}

TEST_CASE("empty angle list gives the empty estimate") {
  auto est = complete_interval({});
  CHECK(est.components.empty());
  CHECK(est.total_length == 0.0);
  CHECK(!est.single_interval);
}

TEST_SUITE_END();
