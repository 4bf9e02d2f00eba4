#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "perco/rng.hpp"
#include "perco/surgery.hpp"
#include "perco/winding.hpp"

namespace perco {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

bool sites_adjacent(Site u, Site v) {
  for (const Site& d : kNeighborOffsets)
    if (u.q + d.q == v.q && u.r + d.r == v.r) return true;
  return false;
}

bool index_path_adjacent(const Annulus& a, const std::vector<std::int32_t>& p) {
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!sites_adjacent(a.site(p[i - 1]), a.site(p[i]))) return false;
  return true;
}

bool index_path_simple(const std::vector<std::int32_t>& p) {
  std::vector<std::int32_t> s = p;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

bool families_disjoint(const std::vector<std::vector<std::int32_t>>& fam) {
  std::vector<std::int32_t> all;
  for (const auto& p : fam) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

double closed_winding(const Annulus& a, const std::vector<std::int32_t>& cyc) {
  double w = index_path_winding(a, cyc);
  w += angle_step(a.site(cyc.back()), a.site(cyc.front()));
  return w;
}

// Winding of the ray segment between positions x and y (either order),
// signed along the walk from x to y.
double ray_segment_winding(const Annulus& a, const std::vector<std::int32_t>& ray, int x, int y) {
  double w = 0.0;
  int step = x <= y ? 1 : -1;
  for (int i = x; i != y; i += step) w += angle_step(a.site(ray[i]), a.site(ray[i + step]));
  return w;
}

struct ActivePoints {
  int in_pos = -1;
  int out_pos = -1;
};

// Inner active point: last ray site in S_{2m}; outer: first site at radius
// >= 3m after it.
std::optional<ActivePoints> active_points(const Annulus& a, const std::vector<std::int32_t>& ray,
                                          int m) {
  std::int64_t r2 = 4LL * m * m, r3 = 9LL * m * m;
  ActivePoints ap;
  for (int i = 0; i < static_cast<int>(ray.size()); ++i)
    if (a.site_norm2(ray[i]) <= r2) ap.in_pos = i;
  if (ap.in_pos < 0) return std::nullopt;
  for (int i = ap.in_pos + 1; i < static_cast<int>(ray.size()); ++i)
    if (a.site_norm2(ray[i]) >= r3) {
      ap.out_pos = i;
      break;
    }
  if (ap.out_pos < 0) return std::nullopt;
  return ap;
}

}  // namespace

std::string serialize_spiral_witness(const SpiralWitness& w) {
  std::ostringstream os;
  os << "spiral m " << w.m << " j " << w.j << "\n";
  auto fam = [&](const char* tag, const std::vector<std::vector<std::int32_t>>& f) {
    for (const auto& p : f) {
      os << tag;
      for (std::int32_t s : p) os << ' ' << s;
      os << "\n";
    }
  };
  fam("ray", w.rays);
  fam("spiral", w.spirals);
  fam("inner_circuit", w.inner_circuits);
  fam("outer_circuit", w.outer_circuits);
  os << "active";
  for (int i = 0; i < w.j; ++i) os << ' ' << w.inner_active[i] << ' ' << w.outer_active[i];
  os << "\n";
  return os.str();
}

SpiralWitness parse_spiral_witness(const std::string& text) {
  SpiralWitness w;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "spiral" && line.find(" m ") != std::string::npos) {
      std::string mk, jk;
      ls >> mk >> w.m >> jk >> w.j;
      continue;
    }
    std::vector<std::int32_t> vals;
    std::int32_t v;
    while (ls >> v) vals.push_back(v);
    if (tag == "ray") w.rays.push_back(vals);
    else if (tag == "spiral") w.spirals.push_back(vals);
    else if (tag == "inner_circuit") w.inner_circuits.push_back(vals);
    else if (tag == "outer_circuit") w.outer_circuits.push_back(vals);
    else if (tag == "active") {
      for (std::size_t i = 0; i + 1 < vals.size(); i += 2) {
        w.inner_active.push_back(vals[i]);
        w.outer_active.push_back(vals[i + 1]);
      }
    } else {
      throw std::invalid_argument("parse_spiral_witness: unknown tag " + tag);
    }
  }
  return w;
}

bool verify_spiral(const SiteConfig& c, const SpiralWitness& w, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (c.annulus == nullptr) throw std::invalid_argument("verify_spiral: configuration has no annulus");
  const Annulus& a = *c.annulus;
  if (w.m < 1 || w.j < 1) return fail("bad m or j");
  const int j = w.j;
  const std::int64_t m2 = 1LL * w.m * w.m;
  const std::int64_t r2 = 4 * m2, r3 = 9 * m2, r4 = 16 * m2;
  if (static_cast<int>(w.rays.size()) != j || static_cast<int>(w.spirals.size()) != j ||
      static_cast<int>(w.inner_circuits.size()) != j ||
      static_cast<int>(w.outer_circuits.size()) != j ||
      static_cast<int>(w.inner_active.size()) != j || static_cast<int>(w.outer_active.size()) != j)
    return fail("family sizes do not match j");

  auto check_sites = [&](const std::vector<std::int32_t>& p) {
    if (p.empty()) throw std::invalid_argument("verify_spiral: empty path");
    for (std::int32_t s : p)
      if (s < 0 || s >= a.size())
        throw std::invalid_argument("verify_spiral: witness references sites outside the annulus");
  };
  auto all_black = [&](const std::vector<std::int32_t>& p) {
    for (std::int32_t s : p)
      if (!c.black(s)) return false;
    return true;
  };
  auto in_belt = [&](const std::vector<std::int32_t>& p, std::int64_t lo2, std::int64_t hi2) {
    for (std::int32_t s : p)
      if (a.site_norm2(s) <= lo2 || a.site_norm2(s) > hi2) return false;
    return true;
  };

  for (const auto* famp : {&w.rays, &w.spirals, &w.inner_circuits, &w.outer_circuits})
    for (const auto& p : *famp) check_sites(p);

  for (const auto* famp : {&w.rays, &w.spirals, &w.inner_circuits, &w.outer_circuits}) {
    for (const auto& p : *famp) {
      if (!all_black(p)) return fail("non-black site in witness");
      if (!index_path_adjacent(a, p)) return fail("non-adjacent consecutive sites");
      if (!index_path_simple(p)) return fail("path not simple");
    }
    if (!families_disjoint(*famp)) return fail("family paths not pairwise disjoint");
  }

  // Circuits: closed, in their belts, one full turn around the origin.
  for (int i = 0; i < j; ++i) {
    const auto& ic = w.inner_circuits[i];
    if (!sites_adjacent(a.site(ic.back()), a.site(ic.front()))) return fail("inner circuit not closed");
    if (!in_belt(ic, m2, r2)) return fail("inner circuit leaves S_{m,2m}");
    if (std::abs(std::abs(closed_winding(a, ic)) - kTwoPi) > 1e-6)
      return fail("inner circuit does not surround the origin once");
    const auto& oc = w.outer_circuits[i];
    if (!sites_adjacent(a.site(oc.back()), a.site(oc.front()))) return fail("outer circuit not closed");
    if (!in_belt(oc, r3, r4)) return fail("outer circuit leaves S_{3m,4m}");
    if (std::abs(std::abs(closed_winding(a, oc)) - kTwoPi) > 1e-6)
      return fail("outer circuit does not surround the origin once");
  }

  for (int i = 0; i < j; ++i) {
    const auto& ray = w.rays[i];
    if (!in_belt(ray, m2, r4)) return fail("ray leaves S_{m,4m}");
    // Endpoints on the boundaries of S_{m,4m}.
    Site first = a.site(ray.front()), last = a.site(ray.back());
    bool touches_inner = false, touches_outer = false;
    for (const Site& d : kNeighborOffsets) {
      if (norm2(Site{first.q + d.q, first.r + d.r}) <= m2) touches_inner = true;
      if (norm2(Site{last.q + d.q, last.r + d.r}) > r4) touches_outer = true;
    }
    if (!touches_inner) return fail("ray does not start at the inner boundary");
    if (!touches_outer) return fail("ray does not end at the outer boundary");

    auto ap = active_points(a, ray, w.m);
    if (!ap) return fail("ray has no active points");
    if (w.inner_active[i] != ray[ap->in_pos]) return fail("inner active point mismatch");
    if (w.outer_active[i] != ray[ap->out_pos]) return fail("outer active point mismatch");
    for (int p = ap->in_pos + 1; p < ap->out_pos; ++p)
      if (a.site_norm2(ray[p]) <= r2 || a.site_norm2(ray[p]) >= r3)
        return fail("ray between active points leaves S_{2m,3m}");

    // Spiral i: detour in S_{2m,3m} attached strictly between the active
    // points of ray i, one extra counterclockwise turn.
    const auto& sp = w.spirals[i];
    if (sp.size() < 2) return fail("spiral too short");
    if (!in_belt(sp, r2, r3)) return fail("spiral leaves S_{2m,3m}");
    std::unordered_map<std::int32_t, int> ray_pos;
    for (int p = 0; p < static_cast<int>(ray.size()); ++p) ray_pos[ray[p]] = p;
    auto xit = ray_pos.find(sp.front());
    auto yit = ray_pos.find(sp.back());
    if (xit == ray_pos.end() || yit == ray_pos.end())
      return fail("spiral endpoints not on its ray");
    int x = xit->second, y = yit->second;
    if (x == y) return fail("spiral endpoints coincide");
    if (x <= ap->in_pos || x >= ap->out_pos || y <= ap->in_pos || y >= ap->out_pos)
      return fail("spiral endpoints not strictly between active points");
    int lo = std::min(x, y), hi = std::max(x, y);
    for (std::size_t t = 1; t + 1 < sp.size(); ++t) {
      auto it = ray_pos.find(sp[t]);
      if (it != ray_pos.end() && (it->second < lo || it->second > hi))
        return fail("spiral interior touches its ray outside the shortcut segment");
    }
    double ws = index_path_winding(a, sp);
    double wr = ray_segment_winding(a, ray, x, y);
    if (std::abs(ws - (wr + kTwoPi)) > 1e-6)
      return fail("spiral winding is not one extra turn over the ray segment");
  }
  if (why) why->clear();
  return true;
}

// ---------------------------------------------------------------------------
// Search

namespace {

// Splices a closed walk (first site not repeated at the end) down to a
// simple circuit with one full turn; duplicate-free loops with zero winding
// are removed, a nonzero-winding subloop replaces the walk.
std::optional<std::vector<std::int32_t>> simplify_cycle(const Annulus& a,
                                                        std::vector<std::int32_t> cyc) {
  for (;;) {
    std::unordered_map<std::int32_t, int> first;
    int di = -1, dk = -1;
    for (int i = 0; i < static_cast<int>(cyc.size()); ++i) {
      auto [it, fresh] = first.try_emplace(cyc[i], i);
      if (!fresh) {
        di = it->second;
        dk = i;
        break;
      }
    }
    if (di < 0) {
      if (std::abs(std::abs(closed_winding(a, cyc)) - kTwoPi) < 1e-6) return cyc;
      return std::nullopt;
    }
    std::vector<std::int32_t> sub(cyc.begin() + di, cyc.begin() + dk);
    if (sub.size() >= 2 && std::abs(closed_winding(a, sub)) > kPi) {
      cyc = std::move(sub);
    } else {
      cyc.erase(cyc.begin() + di, cyc.begin() + dk);
    }
    if (cyc.size() < 3) return std::nullopt;
  }
}

struct BeltScratch {
  std::vector<std::uint8_t> usable, burned, frontier;
  std::vector<std::int32_t> queue;
};

// One innermost usable-black circuit surrounding the origin inside the belt
// (lo2, hi2], or nullopt when a non-usable chain blocks every circuit.
std::optional<std::vector<std::int32_t>> find_one_circuit(const Annulus& a, const SiteConfig& c,
                                                          std::int64_t lo2, std::int64_t hi2,
                                                          const std::vector<std::uint8_t>& used,
                                                          BeltScratch& sc) {
  const int size = a.size();
  sc.usable.assign(static_cast<std::size_t>(size), 0);
  sc.burned.assign(static_cast<std::size_t>(size), 0);
  sc.frontier.assign(static_cast<std::size_t>(size), 0);
  sc.queue.clear();

  auto in_belt = [&](int v) { return a.site_norm2(v) > lo2 && a.site_norm2(v) <= hi2; };
  for (int v = 0; v < size; ++v)
    if (in_belt(v) && c.black(v) && !used[static_cast<std::size_t>(v)])
      sc.usable[static_cast<std::size_t>(v)] = 1;

  // Burn from the belt's inner rim through non-usable sites.
  for (int v = 0; v < size; ++v) {
    if (!in_belt(v) || sc.usable[static_cast<std::size_t>(v)]) continue;
    Site s = a.site(v);
    bool rim = false;
    for (const Site& d : kNeighborOffsets)
      if (norm2(Site{s.q + d.q, s.r + d.r}) <= lo2) rim = true;
    if (rim) {
      sc.burned[static_cast<std::size_t>(v)] = 1;
      sc.queue.push_back(v);
    }
  }
  for (std::size_t qi = 0; qi < sc.queue.size(); ++qi) {
    int u = sc.queue[qi];
    Site s = a.site(u);
    for (const Site& d : kNeighborOffsets)
      if (norm2(Site{s.q + d.q, s.r + d.r}) > hi2) return std::nullopt;  // blocked across
    for (const std::int32_t* p = a.neighbors_begin(u); p != a.neighbors_end(u); ++p) {
      int v = *p;
      if (!in_belt(v) || sc.burned[static_cast<std::size_t>(v)] ||
          sc.usable[static_cast<std::size_t>(v)])
        continue;
      sc.burned[static_cast<std::size_t>(v)] = 1;
      sc.queue.push_back(v);
    }
  }

  // Frontier: usable sites on the rim or adjacent to the burned region.
  std::vector<std::int32_t> fsites;
  for (int v = 0; v < size; ++v) {
    if (!sc.usable[static_cast<std::size_t>(v)]) continue;
    Site s = a.site(v);
    bool front = false;
    for (const Site& d : kNeighborOffsets)
      if (norm2(Site{s.q + d.q, s.r + d.r}) <= lo2) front = true;
    for (const std::int32_t* p = a.neighbors_begin(v); !front && p != a.neighbors_end(v); ++p)
      if (sc.burned[static_cast<std::size_t>(*p)]) front = true;
    if (front) {
      sc.frontier[static_cast<std::size_t>(v)] = 1;
      fsites.push_back(v);
    }
  }

  auto search_within = [&](const std::vector<std::uint8_t>& mask)
      -> std::optional<std::vector<std::int32_t>> {
    constexpr int S = 4;
    const int sheets = 2 * S + 1;
    std::vector<std::int32_t> parent(static_cast<std::size_t>(sheets) * size, -2);
    std::vector<std::int32_t> bfs;
    auto node_of = [&](int site, int sheet) { return (sheet + S) * size + site; };
    // Cut pairs inside the mask.
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
    for (int u = 0; u < size; ++u) {
      if (!mask[static_cast<std::size_t>(u)]) continue;
      for (int k = 0; k < a.degree(u); ++k) {
        int v = a.neighbors_begin(u)[k];
        if (a.cross(u, k) == 1 && mask[static_cast<std::size_t>(v)]) pairs.push_back({u, v});
      }
    }
    for (const auto& [pa, pb] : pairs) {
      std::fill(parent.begin(), parent.end(), -2);
      bfs.clear();
      int start = node_of(pb, 0), goal = node_of(pa, 0);
      parent[static_cast<std::size_t>(start)] = -1;
      bfs.push_back(start);
      bool found = false;
      for (std::size_t qi = 0; qi < bfs.size() && !found; ++qi) {
        int id = bfs[qi];
        int site = id % size, sheet = id / size - S;
        for (int k = 0; k < a.degree(site); ++k) {
          int v = a.neighbors_begin(site)[k];
          if (!mask[static_cast<std::size_t>(v)]) continue;
          int ns = sheet + a.cross(site, k);
          if (ns < -S || ns > S) continue;
          int nid = node_of(v, ns);
          if (parent[static_cast<std::size_t>(nid)] != -2) continue;
          parent[static_cast<std::size_t>(nid)] = id;
          if (nid == goal) {
            found = true;
            break;
          }
          bfs.push_back(nid);
        }
      }
      if (!found) continue;
      std::vector<std::int32_t> walk;
      for (int id = goal; id != -1; id = parent[static_cast<std::size_t>(id)])
        walk.push_back(id % size);
      std::reverse(walk.begin(), walk.end());  // pb .. pa; closing edge pa -> pb
      if (auto cyc = simplify_cycle(a, walk)) return cyc;
    }
    return std::nullopt;
  };

  if (auto cyc = search_within(sc.frontier)) return cyc;
  return search_within(sc.usable);
}

std::vector<std::vector<std::int32_t>> peel_circuits(const Annulus& a, const SiteConfig& c,
                                                     std::int64_t lo2, std::int64_t hi2, int j) {
  std::vector<std::vector<std::int32_t>> out;
  std::vector<std::uint8_t> used(static_cast<std::size_t>(a.size()), 0);
  BeltScratch sc;
  for (int i = 0; i < j; ++i) {
    auto cyc = find_one_circuit(a, c, lo2, hi2, used, sc);
    if (!cyc) break;
    for (std::int32_t s : *cyc) used[static_cast<std::size_t>(s)] = 1;
    out.push_back(std::move(*cyc));
  }
  return out;
}

}  // namespace

SpiralFinder::SpiralFinder(const Annulus& host, int m, int j)
    : host_(host), m_(m), j_(j), band_(Annulus::build(m, 4 * m)), detector_(band_) {
  if (m < 1 || j < 1) throw std::invalid_argument("SpiralFinder: need m >= 1 and j >= 1");
  if (host.inner_radius() > m || host.outer_radius() < 4 * m)
    throw std::invalid_argument("SpiralFinder: host annulus does not cover S_{m,4m}");
  band_to_host_.resize(static_cast<std::size_t>(band_.size()));
  for (int i = 0; i < band_.size(); ++i) {
    int h = host.index_of(band_.site(i));
    if (h < 0) throw std::logic_error("SpiralFinder: band site missing from host");
    band_to_host_[static_cast<std::size_t>(i)] = h;
  }
}

std::optional<SpiralWitness> SpiralFinder::find(const SiteConfig& c, int budget,
                                                std::uint64_t seed) {
  if (budget < 1) throw std::invalid_argument("SpiralFinder::find: budget must be positive");
  if (c.annulus != &host_) throw std::invalid_argument("SpiralFinder::find: config not on host annulus");

  SiteConfig band_cfg;
  band_cfg.annulus = &band_;
  band_cfg.colors.resize(static_cast<std::size_t>(band_.size()));
  for (int i = 0; i < band_.size(); ++i)
    band_cfg.colors[static_cast<std::size_t>(i)] = c.colors[static_cast<std::size_t>(band_to_host_[i])];

  const std::int64_t m2 = 1LL * m_ * m_;

  auto inner = peel_circuits(band_, band_cfg, m2, 4 * m2, j_);
  if (static_cast<int>(inner.size()) < j_) return std::nullopt;
  auto outer = peel_circuits(band_, band_cfg, 9 * m2, 16 * m2, j_);
  if (static_cast<int>(outer.size()) < j_) return std::nullopt;

  ArmWitness aw;
  if (detector_.max_disjoint_arms(band_cfg, kBlack, j_, &aw) < j_) return std::nullopt;

  std::vector<ActivePoints> aps(static_cast<std::size_t>(j_));
  for (int i = 0; i < j_; ++i) {
    auto ap = active_points(band_, aw.paths[static_cast<std::size_t>(i)], m_);
    if (!ap) return std::nullopt;
    aps[static_cast<std::size_t>(i)] = *ap;
  }

  const int size = band_.size();
  constexpr int S = 3;
  const int sheets = 2 * S + 1;
  std::vector<std::int32_t> parent;
  std::vector<std::int32_t> bfs;
  std::vector<std::uint8_t> usable(static_cast<std::size_t>(size));
  std::unordered_map<std::int32_t, int> ray_pos;

  for (int attempt = 0; attempt < budget; ++attempt) {
    SplitMix64 rng(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(attempt + 1));
    std::vector<int> order(static_cast<std::size_t>(j_));
    for (int i = 0; i < j_; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = j_ - 1; i > 0; --i)
      std::swap(order[static_cast<std::size_t>(i)],
                order[static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i + 1)))]);

    std::vector<std::uint8_t> used_sp(static_cast<std::size_t>(size), 0);
    std::vector<std::vector<std::int32_t>> spirals(static_cast<std::size_t>(j_));
    bool ok = true;

    for (int oi = 0; oi < j_ && ok; ++oi) {
      int i = order[static_cast<std::size_t>(oi)];
      const auto& ray = aw.paths[static_cast<std::size_t>(i)];
      const ActivePoints& ap = aps[static_cast<std::size_t>(i)];
      if (ap.out_pos - ap.in_pos < 3) {
        ok = false;
        break;
      }
      ray_pos.clear();
      for (int p = 0; p < static_cast<int>(ray.size()); ++p) ray_pos[ray[p]] = p;

      // Usable sites for this detour: black mid-belt sites not used by
      // earlier spirals and not on this ray outside the open mid segment.
      for (int v = 0; v < size; ++v) {
        bool u = band_.site_norm2(v) > 4 * m2 && band_.site_norm2(v) <= 9 * m2 &&
                 band_cfg.black(v) && !used_sp[static_cast<std::size_t>(v)];
        usable[static_cast<std::size_t>(v)] = u ? 1 : 0;
      }
      for (int p = 0; p < static_cast<int>(ray.size()); ++p)
        if (p <= ap.in_pos || p >= ap.out_pos) usable[static_cast<std::size_t>(ray[p])] = 0;

      // Prefix cut-crossing counts along the mid segment.
      std::vector<int> wpos(ray.size(), 0);
      for (int p = ap.in_pos + 1; p < ap.out_pos; ++p)
        wpos[static_cast<std::size_t>(p)] =
            (p == ap.in_pos + 1 ? 0
                                : wpos[static_cast<std::size_t>(p - 1)] +
                                      crossing_number(band_.site(ray[p - 1]), band_.site(ray[p])));

      parent.assign(static_cast<std::size_t>(sheets) * size, -2);
      bfs.clear();
      auto node_of = [&](int site, int sheet) { return (sheet + S) * size + site; };
      for (int p = ap.in_pos + 1; p < ap.out_pos; ++p) {
        int wsrc = wpos[static_cast<std::size_t>(p)];
        if (wsrc < -S || wsrc > S) continue;
        int sidx = ray[p];
        if (!usable[static_cast<std::size_t>(sidx)]) continue;
        int id = node_of(sidx, wsrc);
        if (parent[static_cast<std::size_t>(id)] == -2) {
          parent[static_cast<std::size_t>(id)] = -1;
          bfs.push_back(id);
        }
      }
      int goal = -1;
      unsigned rot = static_cast<unsigned>(rng.below(6));
      for (std::size_t qi = 0; qi < bfs.size() && goal < 0; ++qi) {
        int id = bfs[qi];
        int site = id % size, sheet = id / size - S;
        int deg = band_.degree(site);
        for (int kk = 0; kk < deg && goal < 0; ++kk) {
          int k = static_cast<int>((kk + rot) % static_cast<unsigned>(deg));
          int v = band_.neighbors_begin(site)[k];
          if (!usable[static_cast<std::size_t>(v)]) continue;
          int ns = sheet + band_.cross(site, k);
          if (ns < -S || ns > S) continue;
          int nid = node_of(v, ns);
          if (parent[static_cast<std::size_t>(nid)] != -2) continue;
          parent[static_cast<std::size_t>(nid)] = id;
          auto it = ray_pos.find(v);
          if (it != ray_pos.end() && it->second > ap.in_pos && it->second < ap.out_pos &&
              ns == wpos[static_cast<std::size_t>(it->second)] + 1) {
            goal = nid;
            break;
          }
          bfs.push_back(nid);
        }
      }
      if (goal < 0) {
        ok = false;
        break;
      }
      std::vector<std::int32_t> walk;
      for (int id = goal; id != -1; id = parent[static_cast<std::size_t>(id)])
        walk.push_back(id % size);
      std::reverse(walk.begin(), walk.end());

      // Split at mid-segment incidences and keep a piece with exactly one
      // extra counterclockwise turn over its ray segment.
      std::vector<int> marks;
      for (int t = 0; t < static_cast<int>(walk.size()); ++t) {
        auto it = ray_pos.find(walk[t]);
        if (it != ray_pos.end() && it->second > ap.in_pos && it->second < ap.out_pos)
          marks.push_back(t);
      }
      std::vector<std::int32_t> chosen;
      for (std::size_t mi = 0; mi + 1 < marks.size() && chosen.empty(); ++mi) {
        int ta = marks[mi], tb = marks[mi + 1];
        if (tb - ta < 2) continue;
        int x = ray_pos[walk[ta]], y = ray_pos[walk[tb]];
        if (x == y) continue;
        std::vector<std::int32_t> piece(walk.begin() + ta, walk.begin() + tb + 1);
        double dw = index_path_winding(band_, piece) - ray_segment_winding(band_, ray, x, y);
        if (std::abs(dw - kTwoPi) > 1e-6) continue;
        // Splice out any revisits.
        bool bad = false;
        for (;;) {
          std::unordered_map<std::int32_t, int> firstpos;
          int di = -1, dk = -1;
          for (int t = 0; t < static_cast<int>(piece.size()); ++t) {
            auto [it2, fresh] = firstpos.try_emplace(piece[t], t);
            if (!fresh) {
              di = it2->second;
              dk = t;
              break;
            }
          }
          if (di < 0) break;
          std::vector<std::int32_t> loop(piece.begin() + di, piece.begin() + dk);
          if (loop.size() >= 2 && std::abs(closed_winding(band_, loop)) > kPi) {
            bad = true;
            break;
          }
          piece.erase(piece.begin() + di, piece.begin() + dk);
        }
        if (bad || piece.size() < 2) continue;
        double dw2 = index_path_winding(band_, piece) - ray_segment_winding(band_, ray, x, y);
        if (std::abs(dw2 - kTwoPi) > 1e-6) continue;
        chosen = std::move(piece);
      }
      if (chosen.empty()) {
        ok = false;
        break;
      }
      for (std::int32_t s : chosen) used_sp[static_cast<std::size_t>(s)] = 1;
      spirals[static_cast<std::size_t>(i)] = std::move(chosen);
    }
    if (!ok) continue;

    SpiralWitness w;
    w.m = m_;
    w.j = j_;
    auto map_path = [&](const std::vector<std::int32_t>& p) {
      std::vector<std::int32_t> h(p.size());
      for (std::size_t t = 0; t < p.size(); ++t)
        h[t] = band_to_host_[static_cast<std::size_t>(p[t])];
      return h;
    };
    for (int i = 0; i < j_; ++i) {
      w.rays.push_back(map_path(aw.paths[static_cast<std::size_t>(i)]));
      w.spirals.push_back(map_path(spirals[static_cast<std::size_t>(i)]));
      w.inner_circuits.push_back(map_path(inner[static_cast<std::size_t>(i)]));
      w.outer_circuits.push_back(map_path(outer[static_cast<std::size_t>(i)]));
      w.inner_active.push_back(
          band_to_host_[static_cast<std::size_t>(aw.paths[i][aps[i].in_pos])]);
      w.outer_active.push_back(
          band_to_host_[static_cast<std::size_t>(aw.paths[i][aps[i].out_pos])]);
    }
    if (verify_spiral(c, w)) return w;
  }
  return std::nullopt;
}

std::optional<SpiralWitness> find_spiral(const SiteConfig& c, int m, int j, int budget,
                                         std::uint64_t seed) {
  if (c.annulus == nullptr) throw std::invalid_argument("find_spiral: configuration has no annulus");
  SpiralFinder f(*c.annulus, m, j);
  return f.find(c, budget, seed);
}

int count_disjoint_spirals(const SiteConfig& c, int n, int N, int j, int budget_per_band,
                           std::uint64_t seed) {
  if (c.annulus == nullptr) throw std::invalid_argument("count_disjoint_spirals: no annulus");
  if (n < 1 || n >= N) throw std::invalid_argument("count_disjoint_spirals: need 1 <= n < N");
  int count = 0;
  for (std::int64_t m = n; 4 * m <= N; m *= 4) {
    SpiralFinder f(*c.annulus, static_cast<int>(m), j);
    if (f.find(c, budget_per_band, seed ^ static_cast<std::uint64_t>(m))) ++count;
  }
  return count;
}

}  // namespace perco
