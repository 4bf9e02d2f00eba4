#include <algorithm>

#include "perco/arms.hpp"

// Exact arm-witness checker. Kept apart from the detector so the two code
// paths stay independent.

namespace perco {

namespace {
bool sites_adjacent(Site u, Site v) {
  for (const Site& d : kNeighborOffsets)
    if (u.q + d.q == v.q && u.r + d.r == v.r) return true;
  return false;
}
}  // namespace

bool check_arm_witness(const Annulus& a, const SiteConfig& c, const ArmWitness& w,
                       std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.paths.empty()) return fail("empty witness");
  if (w.colors.size() != w.paths.size()) return fail("missing per-path colors");
  std::vector<std::int32_t> all;
  for (std::size_t pi = 0; pi < w.paths.size(); ++pi) {
    const auto& p = w.paths[pi];
    if (p.empty()) return fail("empty path");
    for (std::int32_t s : p) {
      if (s < 0 || s >= a.size()) return fail("site index out of range");
      if (c.colors[static_cast<std::size_t>(s)] != w.colors[pi]) return fail("wrong color on path");
    }
    for (std::size_t i = 1; i < p.size(); ++i)
      if (!sites_adjacent(a.site(p[i - 1]), a.site(p[i])))
        return fail("consecutive sites not adjacent");
    std::vector<std::int32_t> srt = p;
    std::sort(srt.begin(), srt.end());
    if (std::adjacent_find(srt.begin(), srt.end()) != srt.end())
      return fail("path not simple");
    if (!a.is_inner_boundary(p.front())) return fail("path does not start on the inner boundary");
    if (!a.is_outer_boundary(p.back())) return fail("path does not end on the outer boundary");
    all.insert(all.end(), p.begin(), p.end());
  }
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    return fail("paths not pairwise vertex-disjoint");
  if (why) why->clear();
  return true;
}

}  // namespace perco
