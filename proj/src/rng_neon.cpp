#if defined(__aarch64__)

#include <arm_neon.h>

#include "philox_block.hpp"

// NEON Philox-4x32-10: four blocks (16 sites) per iteration, transposed
// layout as in the AVX2 kernel. Bit-identical to the scalar reference.

namespace perco::detail {

namespace {

inline void mulhilo4(uint32x4_t x, std::uint32_t m, uint32x4_t* lo, uint32x4_t* hi) {
  uint32x2_t mv = vdup_n_u32(m);
  uint64x2_t p_lo = vmull_u32(vget_low_u32(x), mv);
  uint64x2_t p_hi = vmull_u32(vget_high_u32(x), mv);
  *lo = vcombine_u32(vmovn_u64(p_lo), vmovn_u64(p_hi));
  *hi = vcombine_u32(vshrn_n_u64(p_lo, 32), vshrn_n_u64(p_hi, 32));
}

}  // namespace

void fill_colors_neon(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst,
                      std::size_t count) {
  const uint32x4_t c2init = vdupq_n_u32(static_cast<std::uint32_t>(seed.stream));
  const uint32x4_t c3init = vdupq_n_u32(static_cast<std::uint32_t>(seed.stream >> 32));
  const uint32x4_t k0init = vdupq_n_u32(static_cast<std::uint32_t>(seed.master));
  const uint32x4_t k1init = vdupq_n_u32(static_cast<std::uint32_t>(seed.master >> 32));

  bool all = threshold >= (1ull << 32);
  const uint32x4_t tvec = vdupq_n_u32(static_cast<std::uint32_t>(threshold & 0xffffffffu));
  const uint32x4_t one = vdupq_n_u32(1);

  std::size_t groups = count / 16;
  std::uint32_t cbuf[8];
  std::uint32_t mask[4][4];
  for (std::size_t g = 0; g < groups; ++g) {
    std::uint64_t base_block = static_cast<std::uint64_t>(g) * 4;
    for (int j = 0; j < 4; ++j) {
      std::uint64_t b = base_block + static_cast<std::uint64_t>(j);
      cbuf[j] = static_cast<std::uint32_t>(b);
      cbuf[4 + j] = static_cast<std::uint32_t>(b >> 32);
    }
    uint32x4_t v0 = vld1q_u32(cbuf);
    uint32x4_t v1 = vld1q_u32(cbuf + 4);
    uint32x4_t v2 = c2init, v3 = c3init;
    uint32x4_t k0 = k0init, k1 = k1init;

    for (int r = 0; r < 10; ++r) {
      uint32x4_t lo0, hi0, lo1, hi1;
      mulhilo4(v0, kPhiloxM0, &lo0, &hi0);
      mulhilo4(v2, kPhiloxM1, &lo1, &hi1);
      v0 = veorq_u32(veorq_u32(hi1, v1), k0);
      v1 = lo1;
      v2 = veorq_u32(veorq_u32(hi0, v3), k1);
      v3 = lo0;
      if (r != 9) {
        k0 = vaddq_u32(k0, vdupq_n_u32(kPhiloxW0));
        k1 = vaddq_u32(k1, vdupq_n_u32(kPhiloxW1));
      }
    }

    uint32x4_t words[4] = {v0, v1, v2, v3};
    for (int l = 0; l < 4; ++l) {
      uint32x4_t cmp = all ? one : vandq_u32(vcltq_u32(words[l], tvec), one);
      vst1q_u32(mask[l], cmp);
    }
    std::uint8_t* out = dst + g * 16;
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) out[4 * j + l] = static_cast<std::uint8_t>(mask[l][j]);
  }

  std::size_t done = groups * 16;
  if (done < count) fill_colors_range_scalar(seed, threshold, dst + done, done, count - done);
}

}  // namespace perco::detail

#endif
