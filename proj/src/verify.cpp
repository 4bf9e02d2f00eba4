#include "perco/verify.hpp"

#include <chrono>
#include <cmath>

#include "perco/boolcube.hpp"
#include "perco/estimate.hpp"
#include "perco/surgery.hpp"
#include "perco/synthetic.hpp"
#include "perco/winding.hpp"

namespace perco {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// Exhaustive enumeration of simple same-color crossings of a small annulus;
// reports each path's winding sheet to the callback. Independent of the
// covering-graph code path.
template <typename Fn>
void enumerate_simple_crossings(const SiteConfig& c, std::uint8_t color, Fn&& on_path) {
  const Annulus& a = *c.annulus;
  std::vector<std::uint8_t> onpath(static_cast<std::size_t>(a.size()), 0);
  std::vector<std::int32_t> path;
  double wind = 0.0;

  auto dfs = [&](auto&& self, int u) -> void {
    if (a.is_outer_boundary(u)) on_path(path, wind);
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
    wind = 0.0;
    dfs(dfs, s);
    path.pop_back();
    onpath[static_cast<std::size_t>(s)] = 0;
  }
}

}  // namespace

SuiteResult suite_menger_duality(std::uint64_t configs, int max_outer, std::uint64_t seed,
                                 const FaultInjection* fault) {
  Timer timer;
  SuiteResult res{"menger_duality", 0, 0, 0.0};
  SplitMix64 rng(seed);
  int bias = fault ? fault->menger_flow_bias : 0;

  // A pool of annuli with width >= 2 so a surrounding circuit exists.
  std::vector<std::pair<int, int>> shapes;
  for (int N = 4; N <= max_outer; N += 2)
    for (int n = 0; n + 2 <= N; n += (N > 12 ? 3 : 1)) shapes.push_back({n, N});
  std::vector<Annulus> pool;
  std::vector<ArmDetector> dets;
  pool.reserve(shapes.size());
  for (auto [n, N] : shapes) pool.push_back(Annulus::build(n, N));
  for (const Annulus& a : pool) dets.emplace_back(a);

  for (std::uint64_t i = 0; i < configs; ++i) {
    std::size_t pick = static_cast<std::size_t>(rng.below(pool.size()));
    const Annulus& a = pool[pick];
    SiteConfig c = sample_config(a, 0.5, SeedSpec{seed, i});
    int flow = dets[pick].max_disjoint_arms(c, kBlack) + bias;
    auto circ = dets[pick].min_black_on_circuit(c);
    ++res.instances;
    if (!circ) {
      ++res.violations;
      continue;
    }
    for (int j = 1; j <= 5; ++j)
      if ((flow >= j) != (*circ >= j)) {
        ++res.violations;
        break;
      }
  }
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_reimer_exhaustive(int n) {
  Timer timer;
  SuiteResult res{"reimer_exhaustive_n" + std::to_string(n), 0, 0, 0.0};
  std::uint64_t events = 1ull << (1ull << n);
  for (std::uint64_t ab = 0; ab < events; ++ab) {
    CubeEvent a(n);
    for (int w = 0; w < (1 << n); ++w)
      if ((ab >> w) & 1) a.set(static_cast<std::uint64_t>(w));
    for (std::uint64_t bb = 0; bb < events; ++bb) {
      CubeEvent b(n);
      for (int w = 0; w < (1 << n); ++w)
        if ((bb >> w) & 1) b.set(static_cast<std::uint64_t>(w));
      ReimerRecord rec = check_reimer(a, b);
      ++res.instances;
      if (!rec.holds || !rec.flip_symmetric) ++res.violations;
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_reimer_random(const std::vector<int>& dims, std::uint64_t pairs_per_dim,
                                std::uint64_t seed) {
  Timer timer;
  SuiteResult res{"reimer_random", 0, 0, 0.0};
  SplitMix64 rng(seed);
  for (int n : dims) {
    for (std::uint64_t i = 0; i < pairs_per_dim; ++i) {
      double da = 0.1 + 0.8 * rng.uniform(), db = 0.1 + 0.8 * rng.uniform();
      CubeEvent a = random_event(n, da, rng);
      CubeEvent b = random_event(n, db, rng);
      ReimerRecord rec = check_reimer(a, b);
      ++res.instances;
      if (!rec.holds || !rec.flip_symmetric) ++res.violations;
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_witness_validity(std::uint64_t configs, std::uint64_t seed) {
  Timer timer;
  SuiteResult res{"witness_validity", 0, 0, 0.0};
  SplitMix64 rng(seed);
  std::vector<Annulus> pool;
  pool.push_back(Annulus::build(0, 4));
  pool.push_back(Annulus::build(2, 7));
  pool.push_back(Annulus::build(4, 12));
  std::vector<ArmDetector> dets;
  for (const Annulus& a : pool) dets.emplace_back(a);

  for (std::uint64_t i = 0; i < configs; ++i) {
    std::size_t pick = static_cast<std::size_t>(rng.below(pool.size()));
    const Annulus& a = pool[pick];
    SiteConfig c = sample_config(a, 0.55, SeedSpec{seed ^ 0xabcdefull, i});
    ArmWitness w;
    int flow = dets[pick].max_disjoint_arms(c, kBlack, kNoLimit, &w);
    ++res.instances;
    if (static_cast<int>(w.paths.size()) != flow) {
      ++res.violations;
      continue;
    }
    if (flow > 0 && !check_arm_witness(a, c, w)) ++res.violations;
  }
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_winding_containment(std::uint64_t configs, std::uint64_t seed) {
  Timer timer;
  SuiteResult res{"winding_containment", 0, 0, 0.0};
  SplitMix64 rng(seed);
  std::vector<Annulus> pool;
  pool.push_back(Annulus::build(0, 2));  // 18 sites
  pool.push_back(Annulus::build(1, 3));  // 30 sites
  const int K = 8;

  for (std::uint64_t i = 0; i < configs; ++i) {
    std::size_t pick = static_cast<std::size_t>(rng.below(pool.size()));
    const Annulus& a = pool[pick];
    SiteConfig c = sample_config(a, 0.5, SeedSpec{seed ^ 0x77ull, i});
    std::uint8_t color = (i & 1) ? kBlack : kWhite;
    auto sheets = single_arm_winding_sheets(c, color, K * kTwoPi);
    ++res.instances;
    bool bad = false;
    enumerate_simple_crossings(c, color, [&](const std::vector<std::int32_t>& path, double wind) {
      double offset = a.site_cut_angle(path.back()) - a.site_cut_angle(path.front());
      int k = static_cast<int>(std::llround((wind - offset) / kTwoPi));
      if (std::abs(wind - offset - k * kTwoPi) > 1e-6) bad = true;
      if (std::abs(k) <= K && sheets.find(k) == sheets.end()) bad = true;
    });
    if (bad) ++res.violations;
  }
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_surgery_reroute(int instances_per_j, std::uint64_t seed) {
  Timer timer;
  SuiteResult res{"surgery_reroute", 0, 0, 0.0};
  struct Shape {
    int j, n, N;
    double winding;
  };
  const Shape shapes[] = {{1, 4, 28, 8.0 * kTwoPi / 2.0},
                          {2, 4, 32, 5.0 * kTwoPi / 2.0},
                          {3, 5, 40, 4.0 * kTwoPi / 2.0}};
  for (const Shape& sh : shapes) {
    Annulus a = Annulus::build(sh.n, sh.N);
    for (int i = 0; i < instances_per_j; ++i) {
      ++res.instances;
      try {
        RerouteInstance inst =
            make_reroute_fixture(a, sh.j, sh.winding, seed ^ (static_cast<std::uint64_t>(sh.j) << 32) ^ i);
        IncreaseWindingResult iw = increase_winding(a, inst.deltas, inst.gammas);
        bool ok = true;
        // Endpoint shift by one position per step; +2*pi total after j steps.
        for (int k = 0; k < sh.j && ok; ++k) {
          const auto& fin = iw.families.back()[static_cast<std::size_t>(k)];
          if (fin.front() != inst.deltas[static_cast<std::size_t>(k)].front()) ok = false;
          if (fin.back() != inst.deltas[static_cast<std::size_t>(k)].back()) ok = false;
          double gain = iw.windings.back()[static_cast<std::size_t>(k)] -
                        iw.initial_windings[static_cast<std::size_t>(k)];
          if (std::abs(gain - kTwoPi) > 1e-6) ok = false;
        }
        // Step checks: disjoint outputs, one-position endpoint shift.
        std::vector<std::vector<std::int32_t>> prev = inst.deltas;
        for (int s = 0; s < sh.j && ok; ++s) {
          RerouteInstance step_inst;
          step_inst.annulus = &a;
          step_inst.gammas = inst.gammas;
          step_inst.deltas = prev;
          if (!check_reroute_output(step_inst, iw.families[static_cast<std::size_t>(s)])) ok = false;
          for (int k = 0; k < sh.j && ok; ++k) {
            double gap = iw.windings[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)] -
                         (s == 0 ? iw.initial_windings[static_cast<std::size_t>(k)]
                                 : iw.windings[static_cast<std::size_t>(s - 1)][static_cast<std::size_t>(k)]);
            if (std::abs(gap - kTwoPi / sh.j) > 2.0 * kAngularQuantum + 1e-9) ok = false;
            if (sh.j >= 2 && gap >= kTwoPi) ok = false;
          }
          prev = iw.families[static_cast<std::size_t>(s)];
        }
        if (!ok) ++res.violations;
      } catch (const std::exception&) {
        ++res.violations;
      }
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_kernel_equivalence(std::uint64_t seed) {
  Timer timer;
  SuiteResult res{"kernel_equivalence", 0, 0, 0.0};
  SplitMix64 rng(seed);
  const auto& kernels = available_fill_kernels();
  for (int trial = 0; trial < 64; ++trial) {
    std::size_t count = 1 + rng.below(5000);
    SeedSpec s{rng.next(), rng.next()};
    std::uint64_t thresh = rng.below((1ull << 32) + 1);
    std::vector<std::uint8_t> ref(count);
    detail::fill_colors_scalar(s, thresh, ref.data(), count);
    for (const FillKernel& k : kernels) {
      std::vector<std::uint8_t> out(count, 0xee);
      k.fn(s, thresh, out.data(), count);
      ++res.instances;
      if (out != ref) ++res.violations;
    }
  }
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_fkg_exact() {
  Timer timer;
  SuiteResult res{"fkg_exact", 0, 0, 0.0};
  FkgExactRecord rec = fkg_exact_check(2, 0, 2);
  res.instances = 1ull << rec.sites;
  if (!rec.holds) ++res.violations;
  res.seconds = timer.elapsed();
  return res;
}

SuiteResult suite_color_symmetry(std::uint64_t configs, std::uint64_t seed) {
  Timer timer;
  SuiteResult res{"color_symmetry", 0, 0, 0.0};
  Annulus a = Annulus::build(2, 9);
  ArmDetector det(a);
  ArmQuery qb{1, SigmaClass::OneBlack, 2, 9};
  ArmQuery qw{1, SigmaClass::OneWhite, 2, 9};
  for (std::uint64_t i = 0; i < configs; ++i) {
    SiteConfig c = sample_config(a, 0.5, SeedSpec{seed ^ 0x5151ull, i});
    SiteConfig f = flip_config(c);
    ++res.instances;
    if (det.detect(c, qb) != det.detect(f, qw)) ++res.violations;
    if (det.detect(c, qw) != det.detect(f, qb)) ++res.violations;
  }
  res.seconds = timer.elapsed();
  return res;
}

std::vector<SuiteResult> run_verification_suite(VerifyLevel level, std::uint64_t seed,
                                                const FaultInjection* fault) {
  std::vector<SuiteResult> out;
  bool full = level == VerifyLevel::Full;
  out.push_back(suite_menger_duality(full ? 10000 : 400, full ? 24 : 14, seed, fault));
  out.push_back(suite_reimer_exhaustive(full ? 3 : 2));
  out.push_back(suite_reimer_random(full ? std::vector<int>{4, 5, 6} : std::vector<int>{5},
                                    full ? 100000 : 2000, seed));
  out.push_back(suite_witness_validity(full ? 2000 : 300, seed));
  out.push_back(suite_winding_containment(full ? 1000 : 120, seed));
  out.push_back(suite_surgery_reroute(full ? 100 : 10, seed));
  out.push_back(suite_kernel_equivalence(seed));
  out.push_back(suite_fkg_exact());
  out.push_back(suite_color_symmetry(full ? 2000 : 300, seed));
  return out;
}

}  // namespace perco
