#pragma once

#include <cstdint>
#include <vector>

#include "perco/lattice.hpp"
#include "perco/surgery.hpp"

namespace perco {

// Seeded constructions of lattice paths for surgery fixtures: near-radial
// crossings and logarithmic spirals traced by greedy target-chasing. All
// paths are simple, cross the annulus from inner to outer boundary, and
// paths sharing an `avoid` mask are pairwise disjoint.

// A near-radial crossing at the given angle. Throws std::runtime_error when
// the greedy trace fails (e.g. blocked by the avoid mask).
std::vector<std::int32_t> make_radial_path(const Annulus& a, double angle,
                                           std::vector<std::uint8_t>* avoid = nullptr);

// A spiral crossing starting near `start_angle` on the inner boundary,
// winding by `winding` radians while ramping the radius across the annulus.
std::vector<std::int32_t> make_spiral_path(const Annulus& a, double start_angle, double winding,
                                           std::vector<std::uint8_t>* avoid = nullptr);

// A full rerouting fixture: j near-radial deltas at angles 2*pi*k/j and j
// interleaved spiral gammas of the given winding starting at the sector
// bisectors. The seed jitters the angles and winding slightly.
RerouteInstance make_reroute_fixture(const Annulus& a, int j, double gamma_winding,
                                     std::uint64_t seed);

}  // namespace perco
