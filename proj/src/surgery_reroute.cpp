#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "perco/surgery.hpp"
#include "perco/winding.hpp"

namespace perco {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr int kUnset = std::numeric_limits<int>::min();

bool sites_adjacent(Site u, Site v) {
  for (const Site& d : kNeighborOffsets)
    if (u.q + d.q == v.q && u.r + d.r == v.r) return true;
  return false;
}

int dir_of(Site u, Site v) {
  for (int d = 0; d < 6; ++d)
    if (u.q + kNeighborOffsets[d].q == v.q && u.r + kNeighborOffsets[d].r == v.r) return d;
  return -1;
}

bool index_path_ok(const Annulus& a, const std::vector<std::int32_t>& p) {
  if (p.empty()) return false;
  for (std::int32_t s : p)
    if (s < 0 || s >= a.size()) return false;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (!sites_adjacent(a.site(p[i - 1]), a.site(p[i]))) return false;
  std::vector<std::int32_t> srt = p;
  std::sort(srt.begin(), srt.end());
  return std::adjacent_find(srt.begin(), srt.end()) == srt.end();
}

// Per-instance combinatorial structure: delta occupancy, sector labels of
// the annulus cut along the deltas, and the unrolled sector position along
// every gamma (the discrete wedge bookkeeping of the lemma).
struct RerouteContext {
  const Annulus& a;
  int j;
  const std::vector<std::vector<std::int32_t>>& gammas;
  const std::vector<std::vector<std::int32_t>>& deltas;

  std::vector<std::int32_t> delta_id, delta_pos;
  std::vector<std::int32_t> gamma_id, gamma_t;
  std::vector<std::int32_t> comp;         // component per non-delta site
  std::vector<std::int32_t> comp_sector;  // component -> sector, -1 = pocket

  std::vector<std::vector<int>> pval;   // unrolled sector per gamma index (kUnset on shared)
  std::vector<std::vector<int>> nxtp;   // pval of first non-shared index >= t
  std::vector<int> tau, pstar;
  std::vector<int> live_from;           // first live position per delta

  RerouteContext(const Annulus& ann, const std::vector<std::vector<std::int32_t>>& gs,
                 const std::vector<std::vector<std::int32_t>>& ds)
      : a(ann), j(static_cast<int>(ds.size())), gammas(gs), deltas(ds) {
    build_occupancy();
    build_sectors();
    build_gamma_tracks();
    build_liveness();
  }

  // Side of neighbor x relative to the delta at interior position pos:
  // +1 = left (counterclockwise side, walking the delta outward), -1 = right,
  // 0 = unclassifiable (endpoint or non-neighbor).
  int side_of(std::int32_t x, int d, int pos) const {
    const auto& del = deltas[static_cast<std::size_t>(d)];
    if (pos <= 0 || pos + 1 >= static_cast<int>(del.size())) return 0;
    Site u = a.site(del[pos]);
    int dn = dir_of(u, a.site(del[pos + 1]));
    int dp = dir_of(u, a.site(del[pos - 1]));
    int dx = dir_of(u, a.site(x));
    if (dn < 0 || dp < 0 || dx < 0 || dx == dn || dx == dp) return 0;
    for (int dd = (dn + 1) % 6; dd != dp; dd = (dd + 1) % 6)
      if (dd == dx) return 1;
    return -1;
  }

 private:
  void build_occupancy() {
    int size = a.size();
    delta_id.assign(static_cast<std::size_t>(size), -1);
    delta_pos.assign(static_cast<std::size_t>(size), -1);
    gamma_id.assign(static_cast<std::size_t>(size), -1);
    gamma_t.assign(static_cast<std::size_t>(size), -1);
    for (int d = 0; d < j; ++d)
      for (int p = 0; p < static_cast<int>(deltas[d].size()); ++p) {
        std::int32_t s = deltas[static_cast<std::size_t>(d)][static_cast<std::size_t>(p)];
        if (delta_id[static_cast<std::size_t>(s)] != -1)
          throw std::invalid_argument("reroute: delta paths are not pairwise disjoint");
        delta_id[static_cast<std::size_t>(s)] = d;
        delta_pos[static_cast<std::size_t>(s)] = p;
      }
    for (int g = 0; g < j; ++g)
      for (int t = 0; t < static_cast<int>(gammas[g].size()); ++t) {
        std::int32_t s = gammas[static_cast<std::size_t>(g)][static_cast<std::size_t>(t)];
        if (gamma_id[static_cast<std::size_t>(s)] != -1)
          throw std::invalid_argument("reroute: gamma paths are not pairwise disjoint");
        gamma_id[static_cast<std::size_t>(s)] = g;
        gamma_t[static_cast<std::size_t>(s)] = t;
      }
  }

  void build_sectors() {
    int size = a.size();
    comp.assign(static_cast<std::size_t>(size), -1);
    int ncomp = 0;
    std::vector<std::int32_t> queue;
    for (int s0 = 0; s0 < size; ++s0) {
      if (comp[static_cast<std::size_t>(s0)] != -1 || delta_id[static_cast<std::size_t>(s0)] != -1)
        continue;
      int id = ncomp++;
      comp[static_cast<std::size_t>(s0)] = id;
      queue.clear();
      queue.push_back(s0);
      for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int u = queue[qi];
        for (const std::int32_t* p = a.neighbors_begin(u); p != a.neighbors_end(u); ++p) {
          if (comp[static_cast<std::size_t>(*p)] != -1 ||
              delta_id[static_cast<std::size_t>(*p)] != -1)
            continue;
          comp[static_cast<std::size_t>(*p)] = id;
          queue.push_back(*p);
        }
      }
    }
    comp_sector.assign(static_cast<std::size_t>(ncomp), -1);
    // Sector d = component on the counterclockwise side of delta_d.
    for (int d = 0; d < j; ++d) {
      const auto& del = deltas[static_cast<std::size_t>(d)];
      int found = -1;
      for (int pos = 1; found < 0 && pos + 1 < static_cast<int>(del.size()); ++pos) {
        std::int32_t u = del[static_cast<std::size_t>(pos)];
        for (const std::int32_t* p = a.neighbors_begin(u); p != a.neighbors_end(u); ++p) {
          if (delta_id[static_cast<std::size_t>(*p)] != -1) continue;
          if (side_of(*p, d, pos) == 1) {
            found = comp[static_cast<std::size_t>(*p)];
            break;
          }
        }
      }
      if (found < 0) throw std::invalid_argument("reroute: cannot orient a delta");
      if (comp_sector[static_cast<std::size_t>(found)] != -1 &&
          comp_sector[static_cast<std::size_t>(found)] != d)
        throw std::invalid_argument("reroute: deltas not in counterclockwise cyclic order");
      comp_sector[static_cast<std::size_t>(found)] = d;
    }
    int labeled = 0;
    for (int c : comp_sector)
      if (c >= 0) ++labeled;
    if (labeled != j)
      throw std::invalid_argument("reroute: deltas do not cut the annulus into j sectors");
  }

  void build_gamma_tracks() {
    pval.assign(static_cast<std::size_t>(j), {});
    nxtp.assign(static_cast<std::size_t>(j), {});
    tau.assign(static_cast<std::size_t>(j), -1);
    pstar.assign(static_cast<std::size_t>(j), 0);
    for (int k = 0; k < j; ++k) {
      const auto& g = gammas[static_cast<std::size_t>(k)];
      int len = static_cast<int>(g.size());
      auto& pv = pval[static_cast<std::size_t>(k)];
      pv.assign(static_cast<std::size_t>(len), kUnset);

      auto shared = [&](int t) { return delta_id[static_cast<std::size_t>(g[t])] != -1; };
      int t0 = 0;
      while (t0 < len && shared(t0)) ++t0;
      if (t0 == len) throw std::invalid_argument("reroute: gamma lies entirely on the deltas");
      int sec0 = comp_sector[static_cast<std::size_t>(comp[static_cast<std::size_t>(g[t0])])];
      if (sec0 < 0) throw std::invalid_argument("reroute: gamma starts in an unclassified pocket");
      int p = sec0;
      for (int t = 0; t < t0; ++t) pv[static_cast<std::size_t>(t)] = kUnset;
      pv[static_cast<std::size_t>(t0)] = p;

      int t = t0;
      while (t + 1 < len) {
        if (!shared(t + 1)) {
          pv[static_cast<std::size_t>(t + 1)] = p;
          ++t;
          continue;
        }
        int b = t + 1;
        while (b + 1 < len && shared(b + 1)) ++b;
        if (b == len - 1) break;  // gamma ends on a delta
        int d_first = delta_id[static_cast<std::size_t>(g[t + 1])];
        for (int u = t + 1; u <= b; ++u)
          if (delta_id[static_cast<std::size_t>(g[u])] != d_first)
            throw std::invalid_argument("reroute: gamma crosses adjacent deltas without separation");
        int s_enter = side_of(g[t], d_first, delta_pos[static_cast<std::size_t>(g[t + 1])]);
        int s_exit = side_of(g[b + 1], d_first, delta_pos[static_cast<std::size_t>(g[b])]);
        if (s_enter == 0 || s_exit == 0)
          throw std::invalid_argument("reroute: gamma meets a delta at its endpoint");
        if (s_enter == -1 && s_exit == 1) ++p;
        else if (s_enter == 1 && s_exit == -1) --p;
        int secnext = comp_sector[static_cast<std::size_t>(comp[static_cast<std::size_t>(g[b + 1])])];
        if (secnext < 0) throw std::invalid_argument("reroute: gamma enters an unclassified pocket");
        if (((p % j) + j) % j != secnext)
          throw std::invalid_argument("reroute: crossing classification inconsistent");
        pv[static_cast<std::size_t>(b + 1)] = p;
        t = b + 1;
      }

      // tau: first time in the sector preceding the wedge of this gamma.
      int want = ((k - 1) % j + j) % j;
      for (int tt = 0; tt < len; ++tt) {
        if (pv[static_cast<std::size_t>(tt)] == kUnset) continue;
        if (((pv[static_cast<std::size_t>(tt)] % j) + j) % j == want) {
          tau[static_cast<std::size_t>(k)] = tt;
          pstar[static_cast<std::size_t>(k)] = pv[static_cast<std::size_t>(tt)];
          break;
        }
      }
      if (tau[static_cast<std::size_t>(k)] < 0)
        throw std::domain_error("reroute: gamma never reaches its starting sector");

      auto& np = nxtp[static_cast<std::size_t>(k)];
      np.assign(static_cast<std::size_t>(len) + 1, kUnset);
      for (int tt = len - 1; tt >= 0; --tt)
        np[static_cast<std::size_t>(tt)] = pv[static_cast<std::size_t>(tt)] != kUnset
                                               ? pv[static_cast<std::size_t>(tt)]
                                               : np[static_cast<std::size_t>(tt) + 1];
    }
  }

  void build_liveness() {
    int size = a.size();
    std::vector<std::uint8_t> in_prefix(static_cast<std::size_t>(size), 0);
    for (int k = 0; k < j; ++k)
      for (int t = 0; t <= tau[static_cast<std::size_t>(k)]; ++t)
        in_prefix[static_cast<std::size_t>(gammas[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)])] = 1;
    live_from.assign(static_cast<std::size_t>(j), 0);
    for (int d = 0; d < j; ++d) {
      const auto& del = deltas[static_cast<std::size_t>(d)];
      int last_hit = -1;
      for (int p = 0; p < static_cast<int>(del.size()); ++p)
        if (in_prefix[static_cast<std::size_t>(del[static_cast<std::size_t>(p)])]) last_hit = p;
      live_from[static_cast<std::size_t>(d)] = last_hit + 1;
      if (live_from[static_cast<std::size_t>(d)] >= static_cast<int>(del.size()))
        throw std::domain_error("reroute: gamma prefixes sever a delta");
    }
  }
};

}  // namespace

std::vector<std::vector<std::int32_t>> reroute(const RerouteInstance& inst) {
  if (inst.annulus == nullptr) throw std::invalid_argument("reroute: no annulus");
  const Annulus& a = *inst.annulus;
  int j = static_cast<int>(inst.deltas.size());
  if (j < 1 || static_cast<int>(inst.gammas.size()) != j)
    throw std::invalid_argument("reroute: need matching nonempty families");
  for (const auto& p : inst.deltas)
    if (!index_path_ok(a, p)) throw std::invalid_argument("reroute: invalid delta path");
  for (const auto& p : inst.gammas)
    if (!index_path_ok(a, p)) throw std::invalid_argument("reroute: invalid gamma path");
  for (const auto& p : inst.deltas) {
    if (!a.is_inner_boundary(p.front()) || !a.is_outer_boundary(p.back()))
      throw std::invalid_argument("reroute: delta does not cross the annulus");
  }
  for (const auto& p : inst.gammas) {
    if (!a.is_inner_boundary(p.front()) || !a.is_outer_boundary(p.back()))
      throw std::invalid_argument("reroute: gamma does not cross the annulus");
  }
  double need = kTwoPi * (1.0 + 2.0 / j);
  for (const auto& p : inst.gammas)
    if (index_path_winding(a, p) <= need - 1e-9)
      throw std::domain_error("reroute: gamma winding not above 2*pi*(1+2/j)");

  RerouteContext ctx(a, inst.gammas, inst.deltas);

  std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(j));
  for (int k = 0; k < j; ++k) {
    int k2 = (k + 1) % j;
    const auto& dk = inst.deltas[static_cast<std::size_t>(k)];
    const auto& dk2 = inst.deltas[static_cast<std::size_t>(k2)];
    const auto& g = inst.gammas[static_cast<std::size_t>(k)];
    const auto& pv = ctx.pval[static_cast<std::size_t>(k)];
    const auto& np = ctx.nxtp[static_cast<std::size_t>(k)];
    const int tau = ctx.tau[static_cast<std::size_t>(k)];
    const int window = ctx.pstar[static_cast<std::size_t>(k)] + 1;
    const int glen = static_cast<int>(g.size());

    std::vector<std::int32_t>& path = out[static_cast<std::size_t>(k)];
    path.clear();
    path.push_back(dk[0]);

    bool on_delta = true;
    int d = k, i = 0, tg = -1, entry_t = tau, last_gt = tau;
    int lp[2] = {-1, -1};
    auto slot = [&](int dd) { return dd == k ? 0 : 1; };
    long budget = 4L * (static_cast<long>(dk.size()) + dk2.size() + glen) + 16;

    for (long step = 0;; ++step) {
      if (step > budget) throw std::runtime_error("reroute: walk budget exceeded");
      if (on_delta) {
        const auto& del = d == k ? dk : dk2;
        if (i > lp[slot(d)]) lp[slot(d)] = i;
        if (i + 1 == static_cast<int>(del.size())) {
          if (d != k2) throw std::runtime_error("reroute: walk ended on the wrong delta");
          break;
        }
        std::int32_t site = del[static_cast<std::size_t>(i)];
        if (i >= ctx.live_from[static_cast<std::size_t>(d)] &&
            ctx.gamma_id[static_cast<std::size_t>(site)] == k) {
          int t = ctx.gamma_t[static_cast<std::size_t>(site)];
          if (t > last_gt && t > tau && t + 1 <= glen && np[static_cast<std::size_t>(t)] != kUnset) {
            int fwd = pv[static_cast<std::size_t>(t)] != kUnset
                          ? pv[static_cast<std::size_t>(t)]
                          : (t + 1 < glen ? np[static_cast<std::size_t>(t + 1)] : kUnset);
            if (fwd == window) {
              on_delta = false;
              tg = t;
              entry_t = t;
              continue;
            }
          }
        }
        ++i;
        path.push_back(del[static_cast<std::size_t>(i)]);
        continue;
      }
      // on gamma
      std::int32_t site = g[static_cast<std::size_t>(tg)];
      int did = ctx.delta_id[static_cast<std::size_t>(site)];
      if (tg > entry_t && (did == k || did == k2)) {
        int pos = ctx.delta_pos[static_cast<std::size_t>(site)];
        if (pos >= ctx.live_from[static_cast<std::size_t>(did)] && pos > lp[slot(did)]) {
          last_gt = tg;
          on_delta = true;
          d = did;
          i = pos;
          continue;
        }
      }
      if (did == -1 && pv[static_cast<std::size_t>(tg)] != kUnset &&
          pv[static_cast<std::size_t>(tg)] != window && tg > entry_t)
        throw std::runtime_error("reroute: walk left the wedge without attaching");
      ++tg;
      if (tg >= glen) throw std::runtime_error("reroute: walk ran off its gamma");
      path.push_back(g[static_cast<std::size_t>(tg)]);
    }
  }
  return out;
}

bool check_reroute_output(const RerouteInstance& inst,
                          const std::vector<std::vector<std::int32_t>>& out, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const Annulus& a = *inst.annulus;
  int j = static_cast<int>(inst.deltas.size());
  if (static_cast<int>(out.size()) != j) return fail("wrong output family size");
  for (int k = 0; k < j; ++k) {
    const auto& p = out[static_cast<std::size_t>(k)];
    if (!index_path_ok(a, p)) return fail("output path invalid or not simple");
    int k2 = (k + 1) % j;
    if (p.front() != inst.deltas[static_cast<std::size_t>(k)].front())
      return fail("output does not start at the inner endpoint of its delta");
    if (p.back() != inst.deltas[static_cast<std::size_t>(k2)].back())
      return fail("output does not end at the outer endpoint of the next delta");
    std::vector<std::int32_t> allowed;
    for (const auto* src : {&inst.deltas[static_cast<std::size_t>(k)],
                            &inst.deltas[static_cast<std::size_t>(k2)],
                            &inst.gammas[static_cast<std::size_t>(k)]})
      allowed.insert(allowed.end(), src->begin(), src->end());
    std::sort(allowed.begin(), allowed.end());
    for (std::int32_t s : p)
      if (!std::binary_search(allowed.begin(), allowed.end(), s))
        return fail("output leaves delta_k, delta_{k+1} and gamma_k");
    double w = index_path_winding(a, p);
    if (std::abs(w - kTwoPi / j) > 2.0 * kAngularQuantum + 1e-9)
      return fail("output winding not 2*pi/j within tolerance");
  }
  std::vector<std::int32_t> all;
  for (const auto& p : out) all.insert(all.end(), p.begin(), p.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    return fail("output paths not pairwise disjoint");
  if (why) why->clear();
  return true;
}

IncreaseWindingResult increase_winding(const Annulus& a,
                                       const std::vector<std::vector<std::int32_t>>& lambdas,
                                       const std::vector<std::vector<std::int32_t>>& lambda_primes) {
  int j = static_cast<int>(lambdas.size());
  if (j < 1 || static_cast<int>(lambda_primes.size()) != j)
    throw std::invalid_argument("increase_winding: need matching families");
  IncreaseWindingResult res;
  for (const auto& p : lambdas) res.initial_windings.push_back(index_path_winding(a, p));

  std::vector<std::vector<std::int32_t>> cur = lambdas;
  for (int step = 1; step <= j; ++step) {
    for (int k = 0; k < j; ++k) {
      double diff = index_path_winding(a, lambda_primes[static_cast<std::size_t>(k)]) -
                    index_path_winding(a, cur[static_cast<std::size_t>(k)]);
      if (diff < kTwoPi - 1e-9)
        throw std::domain_error("increase_winding: winding difference below 2*pi at step " +
                                std::to_string(step));
    }
    RerouteInstance inst;
    inst.annulus = &a;
    inst.gammas = lambda_primes;
    inst.deltas = cur;
    try {
      cur = reroute(inst);
    } catch (const std::exception& e) {
      throw std::runtime_error("increase_winding: step " + std::to_string(step) + ": " + e.what());
    }
    std::vector<double> ws;
    for (const auto& p : cur) ws.push_back(index_path_winding(a, p));
    res.families.push_back(cur);
    res.windings.push_back(std::move(ws));
  }
  return res;
}

}  // namespace perco
