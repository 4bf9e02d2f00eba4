#include "perco/sample.hpp"

namespace perco {

SiteConfig sample_config(const Annulus& a, double p, SeedSpec seed) {
  SiteConfig c;
  sample_config_into(a, p, seed, c);
  return c;
}

void sample_config_into(const Annulus& a, double p, SeedSpec seed, SiteConfig& out) {
  std::uint64_t threshold = color_threshold(p);
  out.annulus = &a;
  out.colors.resize(static_cast<std::size_t>(a.size()));
  fill_colors(seed, threshold, out.colors.data(), out.colors.size());
}

SiteConfig flip_config(const SiteConfig& c) {
  SiteConfig f;
  f.annulus = c.annulus;
  f.colors.resize(c.colors.size());
  for (std::size_t i = 0; i < c.colors.size(); ++i) f.colors[i] = c.colors[i] ^ 1u;
  return f;
}

}  // namespace perco
