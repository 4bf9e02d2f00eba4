#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "philox_block.hpp"

// AVX2 Philox-4x32-10: eight blocks (32 sites) per iteration in transposed
// layout, vj holding word j of all eight blocks. Bit-identical to the scalar
// reference; only ever called after a cpuid check.

namespace perco::detail {

namespace {

inline void mulhilo8(__m256i x, __m256i m, __m256i* lo, __m256i* hi) {
  __m256i even = _mm256_mul_epu32(x, m);
  __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), m);
  *lo = _mm256_blend_epi32(even, _mm256_slli_epi64(odd, 32), 0xAA);
  *hi = _mm256_blend_epi32(_mm256_srli_epi64(even, 32), odd, 0xAA);
}

}  // namespace

void fill_colors_avx2(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst,
                      std::size_t count) {
  const __m256i m0 = _mm256_set1_epi32(static_cast<int>(kPhiloxM0));
  const __m256i m1 = _mm256_set1_epi32(static_cast<int>(kPhiloxM1));
  const __m256i w0 = _mm256_set1_epi32(static_cast<int>(kPhiloxW0));
  const __m256i w1 = _mm256_set1_epi32(static_cast<int>(kPhiloxW1));
  const __m256i c2init = _mm256_set1_epi32(static_cast<int>(seed.stream & 0xffffffffu));
  const __m256i c3init = _mm256_set1_epi32(static_cast<int>(seed.stream >> 32));
  const __m256i k0init = _mm256_set1_epi32(static_cast<int>(seed.master & 0xffffffffu));
  const __m256i k1init = _mm256_set1_epi32(static_cast<int>(seed.master >> 32));
  const __m256i sign = _mm256_set1_epi32(static_cast<int>(0x80000000u));

  bool all = threshold >= (1ull << 32);
  const __m256i tvec =
      _mm256_xor_si256(_mm256_set1_epi32(static_cast<int>(threshold & 0xffffffffu)), sign);

  std::size_t groups = count / 32;
  alignas(32) std::uint32_t cbuf[16];
  for (std::size_t g = 0; g < groups; ++g) {
    std::uint64_t base_block = static_cast<std::uint64_t>(g) * 8;
    for (int j = 0; j < 8; ++j) {
      std::uint64_t b = base_block + static_cast<std::uint64_t>(j);
      cbuf[j] = static_cast<std::uint32_t>(b);
      cbuf[8 + j] = static_cast<std::uint32_t>(b >> 32);
    }
    __m256i v0 = _mm256_load_si256(reinterpret_cast<const __m256i*>(cbuf));
    __m256i v1 = _mm256_load_si256(reinterpret_cast<const __m256i*>(cbuf + 8));
    __m256i v2 = c2init, v3 = c3init;
    __m256i k0 = k0init, k1 = k1init;

    for (int r = 0; r < 10; ++r) {
      __m256i lo0, hi0, lo1, hi1;
      mulhilo8(v0, m0, &lo0, &hi0);
      mulhilo8(v2, m1, &lo1, &hi1);
      v0 = _mm256_xor_si256(_mm256_xor_si256(hi1, v1), k0);
      v1 = lo1;
      v2 = _mm256_xor_si256(_mm256_xor_si256(hi0, v3), k1);
      v3 = lo0;
      if (r != 9) {
        k0 = _mm256_add_epi32(k0, w0);
        k1 = _mm256_add_epi32(k1, w1);
      }
    }

    unsigned bits[4];
    if (all) {
      bits[0] = bits[1] = bits[2] = bits[3] = 0xffu;
    } else {
      __m256i words[4] = {v0, v1, v2, v3};
      for (int l = 0; l < 4; ++l) {
        __m256i cmp = _mm256_cmpgt_epi32(tvec, _mm256_xor_si256(words[l], sign));
        bits[l] = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(cmp)));
      }
    }
    std::uint8_t* out = dst + g * 32;
    for (int j = 0; j < 8; ++j)
      for (int l = 0; l < 4; ++l) out[4 * j + l] = static_cast<std::uint8_t>((bits[l] >> j) & 1u);
  }

  std::size_t done = groups * 32;
  if (done < count) fill_colors_range_scalar(seed, threshold, dst + done, done, count - done);
}

}  // namespace perco::detail

#endif
