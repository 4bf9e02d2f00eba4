#pragma once

#include <cstdint>

#include "perco/rng.hpp"

// Shared Philox-4x32-10 block kernel used by the scalar reference and as the
// tail path of the vector kernels.

namespace perco::detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_block(std::uint64_t block_index, SeedSpec seed, std::uint32_t out[4]) {
  std::uint32_t c0 = static_cast<std::uint32_t>(block_index);
  std::uint32_t c1 = static_cast<std::uint32_t>(block_index >> 32);
  std::uint32_t c2 = static_cast<std::uint32_t>(seed.stream);
  std::uint32_t c3 = static_cast<std::uint32_t>(seed.stream >> 32);
  std::uint32_t k0 = static_cast<std::uint32_t>(seed.master);
  std::uint32_t k1 = static_cast<std::uint32_t>(seed.master >> 32);
  for (int r = 0; r < 10; ++r) {
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c0;
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c2;
    std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c1 ^ k0;
    std::uint32_t n1 = static_cast<std::uint32_t>(p1);
    std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c3 ^ k1;
    std::uint32_t n3 = static_cast<std::uint32_t>(p0);
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    if (r != 9) {
      k0 += kPhiloxW0;
      k1 += kPhiloxW1;
    }
  }
  out[0] = c0;
  out[1] = c1;
  out[2] = c2;
  out[3] = c3;
}

// Scalar fill for sites [first, first + count), shared tail path.
inline void fill_colors_range_scalar(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst,
                                     std::uint64_t first, std::size_t count) {
  std::uint32_t out[4];
  std::uint64_t site = first;
  std::size_t done = 0;
  while (done < count) {
    philox_block(site >> 2, seed, out);
    for (std::uint64_t lane = site & 3; lane < 4 && done < count; ++lane, ++site, ++done)
      dst[done] = out[lane] < threshold ? 1 : 0;
  }
}

}  // namespace perco::detail
