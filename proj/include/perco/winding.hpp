#pragma once

#include <set>
#include <utility>
#include <vector>

#include "perco/lattice.hpp"
#include "perco/sample.hpp"

namespace perco {

// A lattice path as an explicit site sequence. Consecutive sites must be
// adjacent and no site may sit at the origin (the argument would be
// undefined there).
struct LatticePath {
  std::vector<Site> sites;

  bool is_simple() const;
  // Throws std::invalid_argument on empty paths, origin sites or
  // non-adjacent consecutive sites.
  void validate() const;
  // Continuous determination of the argument, starting from the principal
  // argument of the first site.
  std::vector<double> cumulative_angles() const;
};

// Overall algebraic variation of the argument along the path. Adjacent
// non-origin sites subtend less than pi/2 at the origin, so the principal
// increment per step is the continuous one.
double winding_angle(const LatticePath& p);

LatticePath reverse_path(const LatticePath& p);

// Winding variation along a path given as annulus site indices.
double index_path_winding(const Annulus& a, const std::vector<std::int32_t>& path);

// Reachable winding sheets of single same-color crossings: covering graph of
// the annulus cut along the positive x-ray with sheets |k| <= theta_max/2pi.
// Sheet k is reported when some outer-boundary copy on sheet k is reachable
// from an inner-boundary copy on sheet 0; such a walk from s to t has winding
// exactly 2*pi*k + (cut_angle(t) - cut_angle(s)). theta_max must be a
// positive multiple of 2*pi.
std::set<int> single_arm_winding_sheets(const SiteConfig& c, std::uint8_t color,
                                        double theta_max);

// Completion of a set of winding angles by half-open windows (a-pi, a+pi].
struct WindingSetEstimate {
  std::vector<double> angles;                          // sorted
  std::vector<std::pair<double, double>> components;   // merged (lo, hi]
  bool single_interval = false;
  double total_length = 0.0;
};

// Union of the windows (a-pi, a+pi]; windows abut exactly when two angles
// differ by 2*pi. An empty input yields the empty estimate.
WindingSetEstimate complete_interval(const std::vector<double>& angles);

}  // namespace perco
