#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace perco {

// Seeding for the counter-based generator. (seed, stream) plus a site index
// fully determine every random word, so sampling can be partitioned across
// workers without changing any draw.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const SeedSpec& a, const SeedSpec& b) {
    return a.master == b.master && a.stream == b.stream;
  }
};

// Philox-4x32-10 block function (Salmon et al., SC 2011). Reference scalar
// implementation; must match the published known-answer vectors.
std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key);

// Random word for one site: block index = site/4 forms the low counter
// words, the stream the high ones, the master seed the key; the site's lane
// selects one of the four output words.
std::uint32_t site_word(SeedSpec seed, std::uint64_t site);

// Threshold t in [0, 2^32] with P(word < t) = p for a uniform 32-bit word.
// p = 0.5 maps to exactly 2^31, p = 1 to 2^32 (always true).
std::uint64_t color_threshold(double p);

// Fills dst[0..count) with 1 where site_word(seed, i) < threshold. The
// implementation is selected at runtime (scalar reference, AVX2 or NEON when
// available); all kernels produce bit-identical output.
void fill_colors(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst, std::size_t count);

using FillKernelFn = void (*)(SeedSpec, std::uint64_t, std::uint8_t*, std::size_t);

struct FillKernel {
  std::string name;
  FillKernelFn fn;
};

// All kernels usable on this machine, reference first. The dispatcher picks
// the last entry unless PERCO_KERNEL names another one.
const std::vector<FillKernel>& available_fill_kernels();
const std::string& active_fill_kernel();

namespace detail {
void fill_colors_scalar(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst,
                        std::size_t count);
#if defined(__x86_64__) || defined(_M_X64)
void fill_colors_avx2(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst,
                      std::size_t count);
#endif
#if defined(__aarch64__)
void fill_colors_neon(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst,
                      std::size_t count);
#endif
}  // namespace detail

// Small splittable generator for auxiliary randomized search (not used for
// configuration sampling).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

}  // namespace perco
