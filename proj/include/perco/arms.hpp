#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "perco/lattice.hpp"
#include "perco/sample.hpp"

namespace perco {

enum class SigmaClass { Mono, PolyOneWhite, OneBlack, OneWhite };

const char* sigma_class_name(SigmaClass s);

// A (j, sigma)-arm query on the annulus S_{n,N}, restricted to the color
// classes the exponents need: all-black, B...BW (= j-1 black arms plus one
// white), and the two single-arm classes.
struct ArmQuery {
  int j = 1;
  SigmaClass sigma = SigmaClass::Mono;
  int n = 0;
  int N = 0;

  // Throws std::invalid_argument when the invariants fail
  // (j >= 1, n >= min_inner_radius(j), n < N, j >= 2 for PolyOneWhite).
  void validate() const;
};

// j vertex-disjoint monochromatic simple paths, each from an inner-boundary
// site to an outer-boundary site, stored as annulus site indices.
struct ArmWitness {
  std::vector<std::vector<std::int32_t>> paths;
  std::vector<std::uint8_t> colors;  // per-path color
};

// Exact checker for witnesses, independent of the detection code path.
// Verifies adjacency, simplicity, color, endpoint boundaries and pairwise
// disjointness; on failure optionally reports why.
bool check_arm_witness(const Annulus& a, const SiteConfig& c, const ArmWitness& w,
                       std::string* why = nullptr);

inline constexpr int kNoLimit = std::numeric_limits<int>::max();

// Per-configuration arm detection. All methods are pure functions of the
// configuration; the object only carries scratch buffers, so use one
// detector per thread.
class ArmDetector {
 public:
  explicit ArmDetector(const Annulus& a);

  const Annulus& annulus() const { return a_; }

  // True iff some cluster of the color contains both an inner- and an
  // outer-boundary site.
  bool has_one_arm(const SiteConfig& c, std::uint8_t color);

  // Maximum number of pairwise vertex-disjoint crossings of the color,
  // as a unit-vertex-capacity max flow between virtual source and sink.
  // Stops early at `limit` augmenting paths; with a witness pointer the
  // returned number of disjoint simple paths is extracted from the flow.
  int max_disjoint_arms(const SiteConfig& c, std::uint8_t color, int limit = kNoLimit,
                        ArmWitness* witness = nullptr);

  // Minimum number of black sites over all lattice circuits of annulus sites
  // surrounding the inner hole; 0-1 shortest paths on the cut-ray covering
  // graph. nullopt when no surrounding circuit exists. Cost grows with the
  // annulus width squared; intended for desk-scale radii.
  std::optional<int> min_black_on_circuit(const SiteConfig& c);

  // Arm-event detection per query class.
  bool detect(const SiteConfig& c, const ArmQuery& q);

  // Same semantics without per-call validation; for sampling loops that
  // validated the query once up front.
  bool detect_unchecked(const SiteConfig& c, const ArmQuery& q);

  // Same-color clusters containing sites of both boundary lists, each as a
  // sorted site-index list, ordered by smallest site index.
  std::vector<std::vector<std::int32_t>> crossing_clusters(const SiteConfig& c,
                                                           std::uint8_t color);

 private:
  bool bireachable_core(const SiteConfig& c, std::uint8_t color);
  void add_arc(int u, int v, int cap);

  const Annulus& a_;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> stamp_a_, stamp_b_;
  std::vector<std::int32_t> queue_;
  // flow scratch
  std::vector<std::int32_t> core_, core_pos_;
  std::vector<std::int32_t> head_, nxt_, to_;
  std::vector<std::int8_t> cap_;
  std::vector<std::int32_t> level_, iter_;
  // covering-graph scratch
  std::vector<std::int32_t> dist_;
};

// Convenience wrappers constructing a detector per call.
bool has_one_arm(const SiteConfig& c, std::uint8_t color);
int max_disjoint_arms(const SiteConfig& c, std::uint8_t color, int limit = kNoLimit,
                      ArmWitness* witness = nullptr);
std::optional<int> min_black_on_circuit(const SiteConfig& c);
bool detect(const SiteConfig& c, const ArmQuery& q);
std::vector<std::vector<std::int32_t>> crossing_clusters(const SiteConfig& c, std::uint8_t color);

}  // namespace perco
