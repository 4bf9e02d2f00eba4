#include <stdexcept>
#include <cmath>

#include "doctest.h"
#include "perco/sample.hpp"

using namespace perco;

TEST_SUITE_BEGIN("sample");

TEST_CASE("degenerate densities") {
  Annulus a = Annulus::build(1, 6);
  SiteConfig black = sample_config(a, 1.0, {1, 0});
  SiteConfig white = sample_config(a, 0.0, {1, 0});
  for (int i = 0; i < a.size(); ++i) {
    CHECK(black.black(i));
    CHECK(!white.black(i));
  }
  CHECK_THROWS_AS(sample_config(a, -0.5, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_config(a, 1.5, {1, 0}), std::invalid_argument);
}

TEST_CASE("determinism and stream separation") {
  Annulus a = Annulus::build(2, 24);
  SiteConfig c1 = sample_config(a, 0.5, {77, 3});
  SiteConfig c2 = sample_config(a, 0.5, {77, 3});
  CHECK(c1.colors == c2.colors);
  SiteConfig c3 = sample_config(a, 0.5, {77, 4});
  CHECK(c1.colors != c3.colors);
  SiteConfig c4 = sample_config(a, 0.5, {78, 3});
  CHECK(c1.colors != c4.colors);
}

TEST_CASE("critical density concentrates at one half") {
  Annulus a = Annulus::build(4, 60);  // ~10^4 sites
  REQUIRE(a.size() > 10000);
  SiteConfig c = sample_config(a, 0.5, {2024, 0});
  double frac = 0;
  for (int i = 0; i < a.size(); ++i) frac += c.black(i);
  frac /= a.size();
  double sigma = 0.5 / std::sqrt(static_cast<double>(a.size()));
  CHECK(std::abs(frac - 0.5) < 4 * sigma);
}

TEST_CASE("flip is an involution and exchanges colors") {
  Annulus a = Annulus::build(1, 8);
  SiteConfig c = sample_config(a, 0.5, {5, 5});
  SiteConfig f = flip_config(c);
  for (int i = 0; i < a.size(); ++i) CHECK(f.black(i) == !c.black(i));
  CHECK(flip_config(f).colors == c.colors);
  SiteConfig black = sample_config(a, 1.0, {5, 5});
  SiteConfig w = flip_config(black);
  for (int i = 0; i < a.size(); ++i) CHECK(!w.black(i));
}

TEST_CASE("paired streams pass a coarse chi-square independence check") {
  Annulus a = Annulus::build(4, 40);
  SiteConfig c1 = sample_config(a, 0.5, {11, 0});
  SiteConfig c2 = sample_config(a, 0.5, {11, 1});
  // Joint counts of (bit1, bit2) over sites; 3 degrees of freedom.
  double counts[2][2] = {{0, 0}, {0, 0}};
  for (int i = 0; i < a.size(); ++i) counts[c1.black(i)][c2.black(i)] += 1;
  double total = a.size();
  double chi2 = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      double expect = total / 4.0;
      chi2 += (counts[x][y] - expect) * (counts[x][y] - expect) / expect;
    }
  CHECK(chi2 < 25.0);  // fixed seeds; generous bound for df=3
}

TEST_SUITE_END();
