#include "perco/winding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace perco {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

bool adjacent(Site u, Site v) {
  for (const Site& d : kNeighborOffsets)
    if (u.q + d.q == v.q && u.r + d.r == v.r) return true;
  return false;
}
}  // namespace

bool LatticePath::is_simple() const {
  std::vector<Site> s = sites;
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) == s.end();
}

void LatticePath::validate() const {
  if (sites.empty()) throw std::invalid_argument("LatticePath: empty path");
  for (const Site& s : sites)
    if (s.q == 0 && s.r == 0) throw std::invalid_argument("LatticePath: path touches the origin");
  for (std::size_t i = 0; i + 1 < sites.size(); ++i)
    if (!adjacent(sites[i], sites[i + 1]))
      throw std::invalid_argument("LatticePath: consecutive sites not adjacent");
}

std::vector<double> LatticePath::cumulative_angles() const {
  validate();
  std::vector<double> out(sites.size());
  out[0] = site_argument(sites[0]);
  for (std::size_t i = 1; i < sites.size(); ++i)
    out[i] = out[i - 1] + angle_step(sites[i - 1], sites[i]);
  return out;
}

double winding_angle(const LatticePath& p) {
  p.validate();
  double w = 0.0;
  for (std::size_t i = 1; i < p.sites.size(); ++i) w += angle_step(p.sites[i - 1], p.sites[i]);
  return w;
}

LatticePath reverse_path(const LatticePath& p) {
  LatticePath r = p;
  std::reverse(r.sites.begin(), r.sites.end());
  return r;
}

double index_path_winding(const Annulus& a, const std::vector<std::int32_t>& path) {
  double w = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i)
    w += angle_step(a.site(path[i - 1]), a.site(path[i]));
  return w;
}

std::set<int> single_arm_winding_sheets(const SiteConfig& c, std::uint8_t color,
                                        double theta_max) {
  if (c.annulus == nullptr) throw std::invalid_argument("configuration has no annulus");
  const Annulus& a = *c.annulus;
  double ratio = theta_max / kTwoPi;
  int K = static_cast<int>(std::llround(ratio));
  if (K < 1 || std::abs(theta_max - K * kTwoPi) > 1e-9)
    throw std::invalid_argument("single_arm_winding_sheets: theta_max not a positive multiple of 2*pi");

  const int size = a.size();
  const int sheets = 2 * K + 1;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(sheets) * size, 0);
  std::vector<std::int32_t> queue;
  auto node_of = [&](int site, int sheet) { return (sheet + K) * size + site; };

  for (std::int32_t s : a.inner_boundary()) {
    if (c.colors[static_cast<std::size_t>(s)] != color) continue;
    int id = node_of(s, 0);
    if (!seen[static_cast<std::size_t>(id)]) {
      seen[static_cast<std::size_t>(id)] = 1;
      queue.push_back(id);
    }
  }
  std::set<int> reached;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int id = queue[qi];
    int site = id % size, sheet = id / size - K;
    if (a.is_outer_boundary(site)) reached.insert(sheet);
    for (int k = 0; k < a.degree(site); ++k) {
      int v = a.neighbors_begin(site)[k];
      if (c.colors[static_cast<std::size_t>(v)] != color) continue;
      int ns = sheet + a.cross(site, k);
      if (ns < -K || ns > K) continue;
      int nid = node_of(v, ns);
      if (!seen[static_cast<std::size_t>(nid)]) {
        seen[static_cast<std::size_t>(nid)] = 1;
        queue.push_back(nid);
      }
    }
  }
  return reached;
}

WindingSetEstimate complete_interval(const std::vector<double>& angles) {
  WindingSetEstimate est;
  if (angles.empty()) return est;
  est.angles = angles;
  std::sort(est.angles.begin(), est.angles.end());
  double lo = est.angles[0] - kPi, hi = est.angles[0] + kPi;
  for (std::size_t i = 1; i < est.angles.size(); ++i) {
    double wlo = est.angles[i] - kPi, whi = est.angles[i] + kPi;
    if (wlo <= hi) {
      hi = std::max(hi, whi);
    } else {
      est.components.push_back({lo, hi});
      lo = wlo;
      hi = whi;
    }
  }
  est.components.push_back({lo, hi});
  for (const auto& [l, h] : est.components) est.total_length += h - l;
  est.single_interval = est.components.size() == 1;
  return est;
}

}  // namespace perco
