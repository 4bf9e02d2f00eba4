#include "perco/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace perco {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Largest k with k <= 2*R/sqrt(3), i.e. 3*k^2 <= 4*R^2. Axial coordinates of
// any site in S_R lie within [-k, k].
int axial_bound(int R) {
  int k = static_cast<int>(2.0 * R / 1.7320508075688772) + 2;
  while (3LL * k * k > 4LL * R * R) --k;
  return k;
}

}  // namespace

double site_argument(Site s) {
  if (s.q == 0 && s.r == 0) throw std::invalid_argument("site_argument: origin has no argument");
  return std::atan2(site_y(s), site_x(s));
}

double cut_angle(Site s) {
  double a = site_argument(s);
  return a < 0.0 ? a + kTwoPi : a;
}

int crossing_number(Site u, Site v) {
  double d = cut_angle(v) - cut_angle(u);
  if (d > kPi) return -1;
  if (d < -kPi) return 1;
  return 0;
}

double angle_step(Site u, Site v) {
  double d = site_argument(v) - site_argument(u);
  if (d > kPi) d -= kTwoPi;
  if (d <= -kPi) d += kTwoPi;
  return d;
}

int min_inner_radius(int j) {
  if (j < 1) throw std::invalid_argument("min_inner_radius: j must be >= 1");
  for (int n = 0;; ++n) {
    std::int64_t n2 = static_cast<std::int64_t>(n) * n;
    int count = 0;
    int b = axial_bound(n + 1);
    for (int r = -b; r <= b; ++r) {
      for (int q = -b; q <= b; ++q) {
        Site s{q, r};
        if (norm2(s) <= n2) continue;
        for (const Site& d : kNeighborOffsets) {
          if (norm2(Site{q + d.q, r + d.r}) <= n2) {
            ++count;
            break;
          }
        }
      }
    }
    if (count >= j) return n;
  }
}

Annulus Annulus::build(int n, int N) {
  if (n < 0 || n >= N) throw std::invalid_argument("Annulus::build: need 0 <= n < N");
  Annulus a;
  a.n_ = n;
  a.N_ = N;
  a.bound_ = axial_bound(N);
  a.dim_ = 2 * a.bound_ + 1;
  a.grid_.assign(static_cast<std::size_t>(a.dim_) * a.dim_, -1);

  std::int64_t n2 = a.inner_radius2(), N2 = a.outer_radius2();
  for (int r = -a.bound_; r <= a.bound_; ++r) {
    for (int q = -a.bound_; q <= a.bound_; ++q) {
      Site s{q, r};
      std::int64_t m = norm2(s);
      if (m > n2 && m <= N2) {
        int idx = static_cast<int>(a.sites_.size());
        a.sites_.push_back(s);
        a.grid_[static_cast<std::size_t>(r + a.bound_) * a.dim_ + (q + a.bound_)] = idx;
        a.norm2_.push_back(m);
      }
    }
  }

  int count = a.size();
  a.off_.assign(count + 1, 0);
  a.arg_.resize(count);
  a.cut_.resize(count);
  a.inner_flag_.assign(count, 0);
  a.outer_flag_.assign(count, 0);
  a.adj_.reserve(static_cast<std::size_t>(count) * 6);
  a.cross_.reserve(static_cast<std::size_t>(count) * 6);

  for (int i = 0; i < count; ++i) {
    Site s = a.sites_[i];
    a.arg_[i] = site_argument(s);
    a.cut_[i] = a.arg_[i] < 0.0 ? a.arg_[i] + kTwoPi : a.arg_[i];
    for (const Site& d : kNeighborOffsets) {
      Site t{s.q + d.q, s.r + d.r};
      std::int64_t m = norm2(t);
      if (m <= n2) a.inner_flag_[i] = 1;
      if (m > N2) a.outer_flag_[i] = 1;
      int idx = a.index_of(t);
      if (idx >= 0) {
        a.adj_.push_back(idx);
        a.cross_.push_back(static_cast<std::int8_t>(crossing_number(s, t)));
      }
    }
    a.off_[i + 1] = static_cast<std::int32_t>(a.adj_.size());
    if (a.inner_flag_[i]) a.inner_boundary_.push_back(i);
    if (a.outer_flag_[i]) a.outer_boundary_.push_back(i);
  }

  if (a.inner_boundary_.empty() || a.outer_boundary_.empty())
    throw std::invalid_argument("Annulus::build: empty boundary list");
  return a;
}

std::vector<Site> neighbors(const Annulus& a, Site s) {
  int i = a.index_of(s);
  if (i < 0) throw std::invalid_argument("neighbors: site not in annulus");
  std::vector<Site> out;
  for (const std::int32_t* p = a.neighbors_begin(i); p != a.neighbors_end(i); ++p)
    out.push_back(a.site(*p));
  return out;
}

}  // namespace perco
