#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "perco/arms.hpp"
#include "perco/rng.hpp"

using namespace perco;

namespace {

SiteConfig solid(const Annulus& a, std::uint8_t color) {
  SiteConfig c;
  c.annulus = &a;
  c.colors.assign(static_cast<std::size_t>(a.size()), color);
  return c;
}

// Paints the sites (q, 0), q in [q0, q1], black on a white background.
SiteConfig radial_chain(const Annulus& a, int q0, int q1) {
  SiteConfig c = solid(a, kWhite);
  for (int q = q0; q <= q1; ++q) {
    int i = a.index_of(Site{q, 0});
    REQUIRE(i >= 0);
    c.colors[static_cast<std::size_t>(i)] = kBlack;
  }
  return c;
}

// Exhaustive oracle: all simple same-color crossings as site bitmasks, then
// a search for j pairwise disjoint ones.
void collect_paths(const Annulus& a, const SiteConfig& c, std::uint8_t color,
                   std::vector<std::uint32_t>& out) {
  REQUIRE(a.size() <= 30);
  std::vector<std::uint8_t> onpath(static_cast<std::size_t>(a.size()), 0);
  std::uint32_t mask = 0;
  auto dfs = [&](auto&& self, int u) -> void {
    if (a.is_outer_boundary(u)) out.push_back(mask);
    for (const std::int32_t* p = a.neighbors_begin(u); p != a.neighbors_end(u); ++p) {
      int v = *p;
      if (onpath[static_cast<std::size_t>(v)] || c.colors[static_cast<std::size_t>(v)] != color)
        continue;
      onpath[static_cast<std::size_t>(v)] = 1;
      mask |= 1u << v;
      self(self, v);
      mask &= ~(1u << v);
      onpath[static_cast<std::size_t>(v)] = 0;
    }
  };
  for (std::int32_t s : a.inner_boundary()) {
    if (c.colors[static_cast<std::size_t>(s)] != color) continue;
    onpath[static_cast<std::size_t>(s)] = 1;
    mask = 1u << s;
    dfs(dfs, s);
    mask = 0;
    onpath[static_cast<std::size_t>(s)] = 0;
  }
}

bool has_disjoint(const std::vector<std::uint32_t>& paths, std::size_t from, std::uint32_t used,
                  int need) {
  if (need == 0) return true;
  for (std::size_t i = from; i < paths.size(); ++i)
    if (!(paths[i] & used) && has_disjoint(paths, i + 1, used | paths[i], need - 1)) return true;
  return false;
}

bool oracle_detect(const Annulus& a, const SiteConfig& c, const ArmQuery& q) {
  std::vector<std::uint32_t> black, white;
  collect_paths(a, c, kBlack, black);
  collect_paths(a, c, kWhite, white);
  std::sort(black.begin(), black.end());
  black.erase(std::unique(black.begin(), black.end()), black.end());
  switch (q.sigma) {
    case SigmaClass::OneBlack: return !black.empty();
    case SigmaClass::OneWhite: return !white.empty();
    case SigmaClass::Mono: return has_disjoint(black, 0, 0, q.j);
    case SigmaClass::PolyOneWhite: return !white.empty() && has_disjoint(black, 0, 0, q.j - 1);
  }
  return false;
}

// Independent shortest-circuit oracle for homogeneous (all-black) annuli:
// unweighted BFS on a two-sided covering built directly from coordinates,
// minimizing circuit length (= black count when everything is black).
int oracle_min_circuit_length(const Annulus& a) {
  const int size = a.size();
  const int S = (a.outer_radius() - a.inner_radius()) / 2 + 2;
  const int sheets = 2 * S + 1;
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist;
  for (int b = 0; b < size; ++b) {
    Site sb = a.site(b);
    if (sb.r != 0 || sb.q <= 0) continue;  // every circuit visits the positive axis
    dist.assign(static_cast<std::size_t>(sheets) * size, -1);
    std::vector<std::int32_t> queue;
    auto node = [&](int site, int sheet) { return (sheet + S) * size + site; };
    dist[static_cast<std::size_t>(node(b, 0))] = 1;
    queue.push_back(node(b, 0));
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int id = queue[qi];
      int site = id % size, sheet = id / size - S;
      for (const Site& d : kNeighborOffsets) {
        Site t{a.site(site).q + d.q, a.site(site).r + d.r};
        int v = a.index_of(t);
        if (v < 0) continue;
        int ns = sheet + crossing_number(a.site(site), t);
        if (ns < -S || ns > S) continue;
        int nid = node(v, ns);
        if (dist[static_cast<std::size_t>(nid)] >= 0) continue;
        dist[static_cast<std::size_t>(nid)] = dist[static_cast<std::size_t>(id)] + 1;
        queue.push_back(nid);
      }
    }
    for (const Site& d : kNeighborOffsets) {
      Site t{sb.q + d.q, sb.r + d.r};
      int v = a.index_of(t);
      if (v < 0) continue;
      if (crossing_number(a.site(v), sb) != 1) continue;
      int dv = dist[static_cast<std::size_t>(node(v, 0))];
      if (dv > 0) best = std::min(best, dv);
    }
  }
  return best;
}

}  // namespace

TEST_SUITE_BEGIN("arms");

TEST_CASE("one-arm detection on solid and chain configurations") {
  Annulus a = Annulus::build(3, 8);
  SiteConfig black = solid(a, kBlack);
  CHECK(has_one_arm(black, kBlack));
  CHECK(!has_one_arm(black, kWhite));
  SiteConfig chain = radial_chain(a, 4, 8);
  CHECK(has_one_arm(chain, kBlack));
  CHECK(has_one_arm(chain, kWhite));
  CHECK(max_disjoint_arms(chain, kBlack) == 1);
}

TEST_CASE("all-white annulus has no black crossings and zero-weight circuits") {
  Annulus a = Annulus::build(2, 8);
  SiteConfig white = solid(a, kWhite);
  CHECK(max_disjoint_arms(white, kBlack) == 0);
  auto mc = min_black_on_circuit(white);
  REQUIRE(mc.has_value());
  CHECK(*mc == 0);
}

TEST_CASE("all-black annulus: flow equals the shortest separating circuit") {
  Annulus a = Annulus::build(2, 8);
  SiteConfig black = solid(a, kBlack);
  int flow = max_disjoint_arms(black, kBlack);
  auto mc = min_black_on_circuit(black);
  REQUIRE(mc.has_value());
  CHECK(flow == *mc);
  CHECK(*mc == oracle_min_circuit_length(a));
}

TEST_CASE("single radial chain: any circuit meets exactly one black site") {
  Annulus a = Annulus::build(3, 9);
  SiteConfig chain = radial_chain(a, 4, 9);
  auto mc = min_black_on_circuit(chain);
  REQUIRE(mc.has_value());
  CHECK(*mc == 1);
}

TEST_CASE("menger duality on random configurations") {
  std::vector<Annulus> pool;
  for (auto [n, N] : {std::pair{0, 5}, std::pair{1, 7}, std::pair{3, 10}, std::pair{5, 14}})
    pool.push_back(Annulus::build(n, N));
  for (int t = 0; t < 400; ++t) {
    const Annulus& a = pool[static_cast<std::size_t>(t) % pool.size()];
    ArmDetector det(a);
    SiteConfig c = sample_config(a, 0.5, {999, static_cast<std::uint64_t>(t)});
    int flow = det.max_disjoint_arms(c, kBlack);
    auto mc = det.min_black_on_circuit(c);
    REQUIRE(mc.has_value());
    for (int j = 1; j <= 5; ++j) CHECK((flow >= j) == (*mc >= j));
  }
}

TEST_CASE("detect agrees with the brute-force witness oracle on a tiny annulus") {
  Annulus a = Annulus::build(0, 2);
  REQUIRE(a.size() == 18);
  ArmDetector det(a);
  std::vector<ArmQuery> queries = {
      {1, SigmaClass::OneBlack, 0, 2}, {1, SigmaClass::OneWhite, 0, 2},
      {1, SigmaClass::Mono, 0, 2},     {2, SigmaClass::Mono, 0, 2},
      {3, SigmaClass::Mono, 0, 2},     {2, SigmaClass::PolyOneWhite, 0, 2},
      {3, SigmaClass::PolyOneWhite, 0, 2}};
  for (int t = 0; t < 3000; ++t) {
    SiteConfig c = sample_config(a, 0.5, {31415, static_cast<std::uint64_t>(t)});
    for (const ArmQuery& q : queries) CHECK(det.detect(c, q) == oracle_detect(a, c, q));
  }
}

TEST_CASE("flow witnesses pass the independent checker") {
  Annulus a = Annulus::build(1, 9);
  ArmDetector det(a);
  for (int t = 0; t < 300; ++t) {
    SiteConfig c = sample_config(a, 0.55, {777, static_cast<std::uint64_t>(t)});
    ArmWitness w;
    int flow = det.max_disjoint_arms(c, kBlack, kNoLimit, &w);
    CHECK(static_cast<int>(w.paths.size()) == flow);
    if (flow > 0) {
      std::string why;
      CHECK_MESSAGE(check_arm_witness(a, c, w, &why), why);
    }
  }
}

TEST_CASE("witness checker rejects corrupted witnesses") {
  Annulus a = Annulus::build(2, 8);
  SiteConfig black = solid(a, kBlack);
  ArmWitness w;
  int flow = max_disjoint_arms(black, kBlack, 2, &w);
  REQUIRE(flow == 2);
  REQUIRE(check_arm_witness(a, black, w));

  ArmWitness bad = w;
  bad.paths[1] = bad.paths[0];  // shared sites
  CHECK(!check_arm_witness(a, black, bad));
  bad = w;
  SiteConfig holed = black;
  holed.colors[static_cast<std::size_t>(bad.paths[0][0])] = kWhite;
  CHECK(!check_arm_witness(a, holed, bad));
  bad = w;
  std::reverse(bad.paths[0].begin(), bad.paths[0].end());
  CHECK(!check_arm_witness(a, black, bad));
}

TEST_CASE("arm events are increasing in black") {
  SplitMix64 rng(5150);
  Annulus a = Annulus::build(1, 8);
  ArmDetector det(a);
  for (int t = 0; t < 300; ++t) {
    SiteConfig c = sample_config(a, 0.5, {4321, static_cast<std::uint64_t>(t)});
    int before = det.max_disjoint_arms(c, kBlack);
    std::vector<int> whites;
    for (int i = 0; i < a.size(); ++i)
      if (!c.black(i)) whites.push_back(i);
    if (whites.empty()) continue;
    int flip = whites[rng.below(whites.size())];
    SiteConfig d = c;
    d.colors[static_cast<std::size_t>(flip)] = kBlack;
    CHECK(det.max_disjoint_arms(d, kBlack) >= before);
  }
}

TEST_CASE("color symmetry under configuration flip") {
  Annulus a = Annulus::build(2, 9);
  ArmDetector det(a);
  ArmQuery qb{1, SigmaClass::OneBlack, 2, 9}, qw{1, SigmaClass::OneWhite, 2, 9};
  for (int t = 0; t < 500; ++t) {
    SiteConfig c = sample_config(a, 0.5, {606, static_cast<std::uint64_t>(t)});
    SiteConfig f = flip_config(c);
    CHECK(det.detect(c, qb) == det.detect(f, qw));
  }
}

TEST_CASE("mono arm counts are nested in j") {
  Annulus a = Annulus::build(2, 10);
  ArmDetector det(a);
  for (int t = 0; t < 200; ++t) {
    SiteConfig c = sample_config(a, 0.5, {8080, static_cast<std::uint64_t>(t)});
    bool prev = true;
    for (int j = 1; j <= 4; ++j) {
      bool now = det.detect(c, {j, SigmaClass::Mono, 2, 10});
      CHECK((!now || prev));  // Mono_j implies Mono_{j-1}
      prev = now;
    }
  }
}

TEST_CASE("crossing clusters on constructed configurations") {
  Annulus a = Annulus::build(3, 9);
  CHECK(crossing_clusters(solid(a, kBlack), kBlack).size() == 1);
  CHECK(crossing_clusters(solid(a, kWhite), kBlack).empty());
  SiteConfig two = radial_chain(a, 4, 9);
  for (int q = 4; q <= 9; ++q) {
    int i = a.index_of(Site{-q, 0});
    REQUIRE(i >= 0);
    two.colors[static_cast<std::size_t>(i)] = kBlack;
  }
  CHECK(crossing_clusters(two, kBlack).size() == 2);
}

TEST_CASE("query validation") {
  CHECK_THROWS_AS((ArmQuery{0, SigmaClass::Mono, 4, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ArmQuery{1, SigmaClass::PolyOneWhite, 4, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ArmQuery{2, SigmaClass::Mono, 8, 8}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ArmQuery{7, SigmaClass::Mono, 0, 8}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ArmQuery{2, SigmaClass::Mono, 4, 8}.validate()));
  Annulus a = Annulus::build(2, 6);
  SiteConfig c = solid(a, kBlack);
  CHECK_THROWS_AS(detect(c, ArmQuery{1, SigmaClass::OneBlack, 2, 7}), std::invalid_argument);
}

TEST_CASE("detect on a wide all-black annulus") {
  Annulus a = Annulus::build(4, 12);
  SiteConfig black = solid(a, kBlack);
  ArmDetector det(a);
  CHECK(det.detect(black, {2, SigmaClass::Mono, 4, 12}));
  CHECK(!det.detect(black, {2, SigmaClass::PolyOneWhite, 4, 12}));
}

TEST_SUITE_END();
