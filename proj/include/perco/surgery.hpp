#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "perco/arms.hpp"
#include "perco/lattice.hpp"
#include "perco/sample.hpp"

namespace perco {

// Discretization tolerance for the continuum angle statements: one lattice
// step near the inner circle can move the argument by up to 2*pi/6 per
// endpoint.
inline constexpr double kAngularQuantum = 2.0 * 3.14159265358979323846 / 6.0;

// The four-family black witness between radii m and 4m: j disjoint rays
// crossing S_{m,4m}, j spiraling detours inside S_{2m,3m} each adding one
// full turn to the ray segment it shortcuts, and j disjoint circuits around
// the origin in each of S_{m,2m} and S_{3m,4m}. Active points are derived
// from the rays: the inner one is the ray's last site in S_{2m}, the outer
// one its first site at radius >= 3m after that. All site values are host
// annulus indices.
struct SpiralWitness {
  int m = 0;
  int j = 0;
  std::vector<std::vector<std::int32_t>> rays;
  std::vector<std::vector<std::int32_t>> spirals;
  std::vector<std::vector<std::int32_t>> inner_circuits;  // closed, first not repeated
  std::vector<std::vector<std::int32_t>> outer_circuits;
  std::vector<std::int32_t> inner_active;  // site index per ray
  std::vector<std::int32_t> outer_active;
};

// Line-oriented fixture format (one family element per line).
std::string serialize_spiral_witness(const SpiralWitness& w);
SpiralWitness parse_spiral_witness(const std::string& text);

// Exact witness checker, independent of the search code path. Spiral
// endpoints must be ray sites strictly between the ray's active points, the
// spiral interior must avoid the rest of its own ray, and each spiral winds
// exactly 2*pi more than the ray segment between its endpoints. Throws
// std::invalid_argument when the witness references sites outside the
// configuration's annulus.
bool verify_spiral(const SiteConfig& c, const SpiralWitness& w, std::string* why = nullptr);

// Seeded randomized search for a j-spiral between radii m and 4m: circuits
// by innermost peeling in each belt, rays by a max-flow witness, spiral
// detours by covering-graph search, then exact post-verification. Sound but
// not complete: a returned witness always verifies, absence of a witness is
// not a proof of absence.
class SpiralFinder {
 public:
  SpiralFinder(const Annulus& host, int m, int j);

  std::optional<SpiralWitness> find(const SiteConfig& c, int budget,
                                    std::uint64_t seed = 0x5eedf00du);

 private:
  const Annulus& host_;
  int m_, j_;
  Annulus band_;
  std::vector<std::int32_t> band_to_host_;
  ArmDetector detector_;
};

std::optional<SpiralWitness> find_spiral(const SiteConfig& c, int m, int j, int budget,
                                         std::uint64_t seed = 0x5eedf00du);

// Greedy count of checker-verified disjoint j-spirals over the dyadic bands
// m_i = n*4^i, 4*m_i <= N. Bands are disjoint annuli, so the witnesses are
// disjoint; the count is a lower bound on the true number.
int count_disjoint_spirals(const SiteConfig& c, int n, int N, int j, int budget_per_band = 64,
                           std::uint64_t seed = 0x5eedf00du);

// Input of the rerouting lemma: j disjoint reference crossings (deltas, the
// discrete rays) and j disjoint crossings with winding above 2*pi*(1+2/j)
// (gammas), all in one annulus, both families listed in counterclockwise
// cyclic order with gamma_k starting between delta_{k-1} and delta_k.
struct RerouteInstance {
  const Annulus* annulus = nullptr;
  std::vector<std::vector<std::int32_t>> gammas;
  std::vector<std::vector<std::int32_t>> deltas;
};

// The topological surgery: returns j disjoint paths, the k-th joining the
// inner endpoint of delta_k to the outer endpoint of delta_{k+1} within
// delta_k, delta_{k+1} and the wedge pieces of gamma_k, with winding
// 2*pi/j up to kAngularQuantum per endpoint. Implements the reduction of
// the proof: prefix trimming at the first entry into the starting sector
// (tau), dead delta components (Delta), the outer component (Omega), and
// the wedge sets (Gamma-tilde) tracked by unrolled sector crossings, with
// coincidence stretches classified by the side their endpoints attach to
// (the polygonal-lines variant). Throws std::domain_error when the winding
// precondition fails and std::invalid_argument on non-disjoint input.
std::vector<std::vector<std::int32_t>> reroute(const RerouteInstance& inst);

// Independent checker for reroute outputs (disjointness, simplicity,
// containment, endpoint shift, winding within tolerance).
bool check_reroute_output(const RerouteInstance& inst,
                          const std::vector<std::vector<std::int32_t>>& out,
                          std::string* why = nullptr);

struct IncreaseWindingResult {
  // Families lambda^1 .. lambda^j produced by iterating the lemma.
  std::vector<std::vector<std::vector<std::int32_t>>> families;
  std::vector<std::vector<double>> windings;  // per step, per path
  std::vector<double> initial_windings;
};

// Iterates reroute with delta = current family and gamma = lambda_primes for
// exactly j steps; after them every winding has increased by exactly 2*pi
// and the endpoints have returned to the initial ones. Preconditions are
// re-checked before each step; a violation reports the step index.
IncreaseWindingResult increase_winding(const Annulus& a,
                                       const std::vector<std::vector<std::int32_t>>& lambdas,
                                       const std::vector<std::vector<std::int32_t>>& lambda_primes);

}  // namespace perco
