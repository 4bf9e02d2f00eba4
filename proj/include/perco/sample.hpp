#pragma once

#include <cstdint>
#include <vector>

#include "perco/lattice.hpp"
#include "perco/rng.hpp"

namespace perco {

inline constexpr std::uint8_t kBlack = 1;
inline constexpr std::uint8_t kWhite = 0;

// One color bit per annulus site, indexed by the annulus site order. The
// annulus must outlive the configuration.
struct SiteConfig {
  const Annulus* annulus = nullptr;
  std::vector<std::uint8_t> colors;

  std::uint8_t color(int i) const { return colors[static_cast<std::size_t>(i)]; }
  bool black(int i) const { return colors[static_cast<std::size_t>(i)] == kBlack; }
  int size() const { return static_cast<int>(colors.size()); }
};

// Each site black independently with probability p, keyed by
// (seed.master, seed.stream, site index); bit-reproducible across platforms
// and across any partition of work. Throws on p outside [0, 1].
SiteConfig sample_config(const Annulus& a, double p, SeedSpec seed);

// In-place variant for sampling loops; reuses the color buffer.
void sample_config_into(const Annulus& a, double p, SeedSpec seed, SiteConfig& out);

// Every color bit inverted; an involution.
SiteConfig flip_config(const SiteConfig& c);

}  // namespace perco
