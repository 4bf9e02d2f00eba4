#include "perco/synthetic.hpp"

#include <cmath>
#include <stdexcept>

#include "perco/rng.hpp"

namespace perco {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Target {
  double x, y;
};

// Greedy trace of a dense target polyline: from the annulus site nearest the
// first target, repeatedly step to the unvisited neighbor closest to the
// current target point, advancing the target index whenever the next target
// is at least as close. Ends once the path reaches an outer-boundary site
// and the targets are exhausted.
std::vector<std::int32_t> chase(const Annulus& a, const std::vector<Target>& targets,
                                std::vector<std::uint8_t>* avoid) {
  auto dist2 = [&](int site, const Target& t) {
    double dx = site_x(a.site(site)) - t.x, dy = site_y(a.site(site)) - t.y;
    return dx * dx + dy * dy;
  };
  int start = -1;
  double best = 1e300;
  for (std::int32_t s : a.inner_boundary()) {
    if (avoid && (*avoid)[static_cast<std::size_t>(s)]) continue;
    double d = dist2(s, targets.front());
    if (d < best) {
      best = d;
      start = s;
    }
  }
  if (start < 0) throw std::runtime_error("chase: no admissible start site");

  std::vector<std::uint8_t> onpath(static_cast<std::size_t>(a.size()), 0);
  std::vector<std::int32_t> path{start};
  onpath[static_cast<std::size_t>(start)] = 1;
  std::size_t ti = 0;
  long guard = 64L * static_cast<long>(targets.size()) + 4L * a.size();

  while (true) {
    if (--guard < 0) throw std::runtime_error("chase: trace did not terminate");
    int cur = path.back();
    while (ti + 1 < targets.size() && dist2(cur, targets[ti + 1]) <= dist2(cur, targets[ti])) ++ti;
    if (ti + 1 == targets.size() && a.is_outer_boundary(cur)) break;
    const Target& goal = ti + 1 < targets.size() ? targets[ti + 1] : targets[ti];
    int next = -1;
    double nd = 1e300;
    for (const std::int32_t* p = a.neighbors_begin(cur); p != a.neighbors_end(cur); ++p) {
      if (onpath[static_cast<std::size_t>(*p)]) continue;
      if (avoid && (*avoid)[static_cast<std::size_t>(*p)]) continue;
      double d = dist2(*p, goal);
      if (d < nd) {
        nd = d;
        next = *p;
      }
    }
    if (next < 0) throw std::runtime_error("chase: trace blocked");
    path.push_back(next);
    onpath[static_cast<std::size_t>(next)] = 1;
  }
  if (avoid)
    for (std::int32_t s : path) (*avoid)[static_cast<std::size_t>(s)] = 1;
  return path;
}

std::vector<Target> ray_targets(const Annulus& a, double angle) {
  double r0 = a.inner_radius() + 0.9, r1 = a.outer_radius() + 0.3;
  std::vector<Target> ts;
  for (double r = r0; r <= r1; r += 0.4)
    ts.push_back({r * std::cos(angle), r * std::sin(angle)});
  return ts;
}

std::vector<Target> spiral_targets(const Annulus& a, double start_angle, double winding) {
  double r0 = a.inner_radius() + 0.9, r1 = a.outer_radius() - 0.7;
  std::vector<Target> ts;
  int steps = static_cast<int>(std::ceil(std::abs(winding) * r1 / 0.35)) + 16;
  for (int i = 0; i <= steps; ++i) {
    double s = static_cast<double>(i) / steps;
    double phi = start_angle + winding * s;
    double r = r0 + (r1 - r0) * s;
    ts.push_back({r * std::cos(phi), r * std::sin(phi)});
  }
  // Final radial push to the outer boundary.
  double phi_end = start_angle + winding;
  for (double r = r1; r <= a.outer_radius() + 0.3; r += 0.4)
    ts.push_back({r * std::cos(phi_end), r * std::sin(phi_end)});
  return ts;
}

}  // namespace

std::vector<std::int32_t> make_radial_path(const Annulus& a, double angle,
                                           std::vector<std::uint8_t>* avoid) {
  return chase(a, ray_targets(a, angle), avoid);
}

std::vector<std::int32_t> make_spiral_path(const Annulus& a, double start_angle, double winding,
                                           std::vector<std::uint8_t>* avoid) {
  return chase(a, spiral_targets(a, start_angle, winding), avoid);
}

RerouteInstance make_reroute_fixture(const Annulus& a, int j, double gamma_winding,
                                     std::uint64_t seed) {
  if (j < 1) throw std::invalid_argument("make_reroute_fixture: j must be >= 1");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    double rot = rng.uniform() * kTwoPi / j;
    double wj = gamma_winding + rng.uniform() * 0.5;
    try {
      RerouteInstance inst;
      inst.annulus = &a;
      std::vector<std::uint8_t> avoid_d(static_cast<std::size_t>(a.size()), 0);
      for (int k = 0; k < j; ++k)
        inst.deltas.push_back(make_radial_path(a, rot + kTwoPi * k / j, &avoid_d));
      std::vector<std::uint8_t> avoid_g(static_cast<std::size_t>(a.size()), 0);
      for (int k = 0; k < j; ++k) {
        double bisector = rot + kTwoPi * k / j - kPi / j;
        inst.gammas.push_back(make_spiral_path(a, bisector, wj, &avoid_g));
      }
      return inst;
    } catch (const std::runtime_error&) {
      continue;  // re-jitter
    }
  }
  throw std::runtime_error("make_reroute_fixture: no admissible fixture after 64 attempts");
}

}  // namespace perco
