#include "perco/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "philox_block.hpp"

namespace perco {

std::array<std::uint32_t, 4> philox4x32_10(const std::array<std::uint32_t, 4>& counter,
                                           const std::array<std::uint32_t, 2>& key) {
  using namespace detail;
  std::uint32_t c[4] = {counter[0], counter[1], counter[2], counter[3]};
  std::uint32_t k[2] = {key[0], key[1]};
  for (int r = 0; r < 10; ++r) {
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
    std::uint32_t n0 = static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0];
    std::uint32_t n1 = static_cast<std::uint32_t>(p1);
    std::uint32_t n2 = static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1];
    std::uint32_t n3 = static_cast<std::uint32_t>(p0);
    c[0] = n0;
    c[1] = n1;
    c[2] = n2;
    c[3] = n3;
    if (r != 9) {
      k[0] += kPhiloxW0;
      k[1] += kPhiloxW1;
    }
  }
  return {c[0], c[1], c[2], c[3]};
}

std::uint32_t site_word(SeedSpec seed, std::uint64_t site) {
  std::uint32_t out[4];
  detail::philox_block(site >> 2, seed, out);
  return out[site & 3];
}

std::uint64_t color_threshold(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("color_threshold: p outside [0,1]");
  if (p <= 0.0) return 0;
  if (p >= 1.0) return 1ull << 32;
  auto t = static_cast<std::uint64_t>(std::llround(p * 4294967296.0));
  return t > (1ull << 32) ? (1ull << 32) : t;
}

namespace detail {

void fill_colors_scalar(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst,
                        std::size_t count) {
  fill_colors_range_scalar(seed, threshold, dst, 0, count);
}

}  // namespace detail

namespace {

std::vector<FillKernel> make_kernels() {
  std::vector<FillKernel> ks;
  ks.push_back({"scalar", &detail::fill_colors_scalar});
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) ks.push_back({"avx2", &detail::fill_colors_avx2});
#endif
#if defined(__aarch64__)
  ks.push_back({"neon", &detail::fill_colors_neon});
#endif
  return ks;
}

struct Dispatch {
  std::vector<FillKernel> kernels;
  FillKernelFn active = nullptr;
  std::string active_name;

  Dispatch() {
    kernels = make_kernels();
    const FillKernel* pick = &kernels.back();
    if (const char* want = std::getenv("PERCO_KERNEL")) {
      for (const FillKernel& k : kernels)
        if (k.name == want) pick = &k;
    }
    active = pick->fn;
    active_name = pick->name;
  }
};

const Dispatch& dispatch() {
  static Dispatch d;
  return d;
}

}  // namespace

void fill_colors(SeedSpec seed, std::uint64_t threshold, std::uint8_t* dst, std::size_t count) {
  dispatch().active(seed, threshold, dst, count);
}

const std::vector<FillKernel>& available_fill_kernels() { return dispatch().kernels; }
const std::string& active_fill_kernel() { return dispatch().active_name; }

}  // namespace perco
