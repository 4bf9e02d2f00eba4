#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace perco {

// Axial coordinates on the triangular lattice. Planar embedding with unit
// spacing:  x = q + r/2,  y = r*sqrt(3)/2,  so |pos|^2 = q^2 + q*r + r^2
// is an integer and disc membership tests are exact.
struct Site {
  int q = 0;
  int r = 0;

  friend bool operator==(const Site& a, const Site& b) { return a.q == b.q && a.r == b.r; }
  friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }
  // Lexicographic in (r, q); fixes the site order of an annulus.
  friend bool operator<(const Site& a, const Site& b) {
    return a.r != b.r ? a.r < b.r : a.q < b.q;
  }
};

// The six neighbor offsets in counterclockwise order starting from the +x
// direction. Direction d points at angle d*60 degrees.
inline constexpr std::array<Site, 6> kNeighborOffsets = {{
    {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1},
}};

inline std::int64_t norm2(Site s) {
  auto q = static_cast<std::int64_t>(s.q);
  auto r = static_cast<std::int64_t>(s.r);
  return q * q + q * r + r * r;
}

inline double site_x(Site s) { return s.q + 0.5 * s.r; }
inline double site_y(Site s) { return 0.8660254037844386467637231707 * s.r; }

// Principal argument of the planar position, in (-pi, pi]. Throws on the
// origin.
double site_argument(Site s);

// Argument mapped to [0, 2*pi); sites exactly on the positive x-axis get 0,
// which assigns them to the upper side of the cut ray used for winding
// bookkeeping.
double cut_angle(Site s);

// Sheet shift of the step u -> v across the cut ray on the positive x-axis:
// +1 for a counterclockwise crossing, -1 for clockwise, 0 otherwise.
int crossing_number(Site u, Site v);

// Principal angular increment of the step u -> v, in (-pi, pi). Both sites
// must be off the origin; adjacent non-origin sites always subtend less than
// pi/2 at the origin.
double angle_step(Site u, Site v);

// Smallest n such that the external boundary of S_n has at least j sites.
int min_inner_radius(int j);

// S_{n,N} = S_N \ S_n with S_r = {site : |pos| <= r}. Sites are ordered
// lexicographically in (r, q). Immutable after construction.
class Annulus {
 public:
  static Annulus build(int n, int N);

  int inner_radius() const { return n_; }
  int outer_radius() const { return N_; }
  std::int64_t inner_radius2() const { return static_cast<std::int64_t>(n_) * n_; }
  std::int64_t outer_radius2() const { return static_cast<std::int64_t>(N_) * N_; }

  int size() const { return static_cast<int>(sites_.size()); }
  const std::vector<Site>& sites() const { return sites_; }
  Site site(int i) const { return sites_[static_cast<std::size_t>(i)]; }

  // Index of a site, or -1 when it is not part of the annulus.
  int index_of(Site s) const {
    int row = s.r + bound_, col = s.q + bound_;
    if (row < 0 || col < 0 || row >= dim_ || col >= dim_) return -1;
    return grid_[static_cast<std::size_t>(row) * dim_ + col];
  }
  bool contains(Site s) const { return index_of(s) >= 0; }

  // Neighbor indices of site i inside the annulus, in the offset order above
  // (absent neighbors skipped).
  const std::int32_t* neighbors_begin(int i) const { return adj_.data() + off_[i]; }
  const std::int32_t* neighbors_end(int i) const { return adj_.data() + off_[i + 1]; }
  int degree(int i) const { return off_[i + 1] - off_[i]; }
  // Cut-ray crossing number of the edge from site i to its k-th listed
  // neighbor.
  std::int8_t cross(int i, int k) const { return cross_[off_[i] + k]; }

  std::int64_t site_norm2(int i) const { return norm2_[i]; }
  double site_arg(int i) const { return arg_[i]; }
  double site_cut_angle(int i) const { return cut_[i]; }

  bool is_inner_boundary(int i) const { return inner_flag_[i] != 0; }
  bool is_outer_boundary(int i) const { return outer_flag_[i] != 0; }
  const std::vector<std::int32_t>& inner_boundary() const { return inner_boundary_; }
  const std::vector<std::int32_t>& outer_boundary() const { return outer_boundary_; }

 private:
  Annulus() = default;

  int n_ = 0, N_ = 0;
  int bound_ = 0, dim_ = 0;
  std::vector<Site> sites_;
  std::vector<std::int32_t> grid_;
  std::vector<std::int32_t> off_, adj_;
  std::vector<std::int8_t> cross_;
  std::vector<std::int64_t> norm2_;
  std::vector<double> arg_, cut_;
  std::vector<std::uint8_t> inner_flag_, outer_flag_;
  std::vector<std::int32_t> inner_boundary_, outer_boundary_;
};

// The <= 6 lattice neighbors of s inside the annulus, in offset order.
// Throws std::invalid_argument when s is not an annulus site.
std::vector<Site> neighbors(const Annulus& a, Site s);

}  // namespace perco
