#include <stdexcept>
#include <array>
#include <cstdint>

#include "doctest.h"
#include "perco/rng.hpp"

using namespace perco;

namespace {

// Second implementation for cross-checking, transcribed independently from
// the Philox reference structure (counter in, ten rounds, bumped key).
std::array<std::uint32_t, 4> philox_oracle(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) {
  auto mulhilo = [](std::uint32_t a, std::uint32_t b, std::uint32_t* hi) {
    std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    *hi = static_cast<std::uint32_t>(p >> 32);
    return static_cast<std::uint32_t>(p);
  };
  for (int round = 0;; ++round) {
    std::uint32_t hi0, hi1;
    std::uint32_t lo0 = mulhilo(0xD2511F53u, ctr[0], &hi0);
    std::uint32_t lo1 = mulhilo(0xCD9E8D57u, ctr[2], &hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    if (round == 9) return ctr;
    key[0] += 0x9E3779B9u;
    key[1] += 0xBB67AE85u;
  }
}

}  // namespace

TEST_SUITE_BEGIN("rng");

TEST_CASE("philox known-answer vectors") {
  auto r0 = philox4x32_10({0, 0, 0, 0}, {0, 0});
  CHECK(r0 == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  auto r1 = philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                          {0xffffffffu, 0xffffffffu});
  CHECK(r1 == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  auto r2 = philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                          {0xa4093822u, 0x299f31d0u});
  CHECK(r2 == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("philox agrees with the transcribed oracle on random inputs") {
  SplitMix64 rng(99);
  for (int t = 0; t < 2000; ++t) {
    std::array<std::uint32_t, 4> ctr;
    std::array<std::uint32_t, 2> key;
    for (auto& c : ctr) c = static_cast<std::uint32_t>(rng.next());
    for (auto& k : key) k = static_cast<std::uint32_t>(rng.next());
    CHECK(philox4x32_10(ctr, key) == philox_oracle(ctr, key));
  }
}

TEST_CASE("site words are the lanes of the block function") {
  SeedSpec seed{0x123456789abcdef0ull, 42};
  for (std::uint64_t site : {0ull, 1ull, 2ull, 3ull, 4ull, 1000ull, (1ull << 33) + 5}) {
    std::uint64_t b = site >> 2;
    auto out = philox4x32_10({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                              static_cast<std::uint32_t>(seed.stream),
                              static_cast<std::uint32_t>(seed.stream >> 32)},
                             {static_cast<std::uint32_t>(seed.master),
                              static_cast<std::uint32_t>(seed.master >> 32)});
    CHECK(site_word(seed, site) == out[site & 3]);
  }
}

TEST_CASE("color threshold edge cases") {
  CHECK(color_threshold(0.0) == 0);
  CHECK(color_threshold(1.0) == (1ull << 32));
  CHECK(color_threshold(0.5) == (1ull << 31));
  CHECK_THROWS_AS(color_threshold(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(color_threshold(1.5), std::invalid_argument);
}

TEST_CASE("all fill kernels are bit-identical to the scalar reference") {
  const auto& kernels = available_fill_kernels();
  CHECK(!kernels.empty());
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t count = 1 + rng.below(4097);
    SeedSpec seed{rng.next(), rng.next()};
    std::uint64_t thresh = rng.below((1ull << 32) + 1);
    std::vector<std::uint8_t> ref(count);
    detail::fill_colors_scalar(seed, thresh, ref.data(), count);
    for (const FillKernel& k : kernels) {
      std::vector<std::uint8_t> out(count, 0xcd);
      k.fn(seed, thresh, out.data(), count);
      CHECK_MESSAGE(out == ref, "kernel ", k.name, " diverged at count ", count);
    }
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernel is registered on this machine when supported") {
  if (!__builtin_cpu_supports("avx2")) return;
  bool found = false;
  for (const FillKernel& k : available_fill_kernels())
    if (k.name == "avx2") found = true;
  CHECK(found);
}
#endif

TEST_SUITE_END();
