#include "perco/boolcube.hpp"

#include <bit>
#include <stdexcept>

namespace perco {

namespace {

std::size_t word_count(int n) {
  std::uint64_t bits = 1ull << n;
  return static_cast<std::size_t>((bits + 63) / 64);
}

void check_dim(const CubeEvent& a, const CubeEvent& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("cube events of different dimension");
}

// Membership vector of flip_i: bit at omega moves to omega ^ (1 << i).
std::vector<std::uint64_t> flip_axis(const std::vector<std::uint64_t>& bits, int i) {
  std::vector<std::uint64_t> out(bits.size());
  if (i >= 6) {
    std::size_t stride = static_cast<std::size_t>(1) << (i - 6);
    for (std::size_t w = 0; w < bits.size(); ++w) out[w ^ stride] = bits[w];
    return out;
  }
  int k = 1 << i;
  std::uint64_t m;
  switch (i) {
    case 0: m = 0x5555555555555555ull; break;
    case 1: m = 0x3333333333333333ull; break;
    case 2: m = 0x0F0F0F0F0F0F0F0Full; break;
    case 3: m = 0x00FF00FF00FF00FFull; break;
    case 4: m = 0x0000FFFF0000FFFFull; break;
    default: m = 0x00000000FFFFFFFFull; break;
  }
  for (std::size_t w = 0; w < bits.size(); ++w)
    out[w] = ((bits[w] & m) << k) | ((bits[w] >> k) & m);
  // Dimensions below 6 leave the upper bits of the single word unused; they
  // stay zero because membership writes never touch them.
  return out;
}

}  // namespace

CubeEvent::CubeEvent(int n) : n_(n) {
  if (n < 0 || n > kMaxDim) throw std::length_error("CubeEvent: dimension out of range");
  bits_.assign(word_count(n), 0);
}

std::uint64_t CubeEvent::card() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

void CubeEvent::set(std::uint64_t w, bool v) {
  if (w >= (1ull << n_)) throw std::out_of_range("CubeEvent::set");
  if (v)
    bits_[w >> 6] |= 1ull << (w & 63);
  else
    bits_[w >> 6] &= ~(1ull << (w & 63));
}

CubeEvent CubeEvent::full(int n) {
  CubeEvent e(n);
  std::uint64_t total = 1ull << n;
  for (std::uint64_t w = 0; w < total; ++w) e.set(w);
  return e;
}

CubeEvent CubeEvent::from_hex(int n, const std::string& hex) {
  CubeEvent e(n);
  std::uint64_t total = 1ull << n;
  for (std::size_t i = 0; i < hex.size(); ++i) {
    char c = hex[i];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    else throw std::invalid_argument("CubeEvent::from_hex: bad character");
    for (int b = 0; b < 4; ++b) {
      std::uint64_t w = 4 * i + static_cast<std::uint64_t>(b);
      if (w < total && ((v >> b) & 1)) e.set(w);
    }
  }
  return e;
}

std::string CubeEvent::to_hex() const {
  std::uint64_t total = 1ull << n_;
  std::string out((total + 3) / 4, '0');
  for (std::uint64_t w = 0; w < total; ++w) {
    if (!test(w)) continue;
    std::size_t i = w / 4;
    int v = out[i] <= '9' ? out[i] - '0' : out[i] - 'a' + 10;
    v |= 1 << (w % 4);
    out[i] = static_cast<char>(v <= 9 ? '0' + v : 'a' + v - 10);
  }
  return out;
}

CubeEvent flip_event(const CubeEvent& a) {
  CubeEvent out(a.dim());
  std::uint64_t total = 1ull << a.dim(), mask = total - 1;
  for (std::uint64_t w = 0; w < total; ++w)
    if (a.test(w)) out.set(mask ^ w);
  return out;
}

CubeEvent disjoint_occurrence(const CubeEvent& a, const CubeEvent& b) {
  check_dim(a, b);
  int n = a.dim();
  if (n > 14) throw std::length_error("disjoint_occurrence: n > 14 exceeds the witness-search cap");
  std::size_t subsets = static_cast<std::size_t>(1) << n;
  std::size_t words = word_count(n);

  // G_X[S] = {w : the cylinder [w]_S lies inside X}; computed top-down from
  // G_X[full] = X by forcing both settings of each free coordinate.
  auto closure = [&](const CubeEvent& x) {
    std::vector<std::vector<std::uint64_t>> g(subsets);
    g[subsets - 1] = x.words();
    for (std::size_t s = subsets - 1; s-- > 0;) {
      int i = std::countr_one(s);  // lowest index not in S
      std::size_t super = s | (static_cast<std::size_t>(1) << i);
      const auto& gs = g[super];
      auto flipped = flip_axis(gs, i);
      auto& out = g[s];
      out.resize(words);
      for (std::size_t w = 0; w < words; ++w) out[w] = gs[w] & flipped[w];
    }
    return g;
  };

  auto ga = closure(a);
  auto gb = closure(b);
  CubeEvent result(n);
  auto& res = result.words();
  std::size_t mask = subsets - 1;
  for (std::size_t s = 0; s < subsets; ++s) {
    const auto& x = ga[s];
    const auto& y = gb[mask ^ s];
    for (std::size_t w = 0; w < words; ++w) res[w] |= x[w] & y[w];
  }
  return result;
}

std::int64_t disjoint_occurrence_witness(const CubeEvent& a, const CubeEvent& b, std::uint64_t w) {
  check_dim(a, b);
  int n = a.dim();
  if (n > 14) throw std::length_error("disjoint_occurrence_witness: n > 14");
  std::uint64_t subsets = 1ull << n;
  for (std::uint64_t s = 0; s < subsets; ++s) {
    // [w]_S subset of A and [w]_{S^c} subset of B, checked by enumerating the
    // free coordinates of each cylinder.
    bool ok = true;
    std::uint64_t free_a = (subsets - 1) ^ s;
    for (std::uint64_t u = free_a;; u = (u - 1) & free_a) {
      if (!a.test((w & s) | u)) {
        ok = false;
        break;
      }
      if (u == 0) break;
    }
    if (!ok) continue;
    for (std::uint64_t u = s;; u = (u - 1) & s) {
      if (!b.test((w & free_a) | u)) {
        ok = false;
        break;
      }
      if (u == 0) break;
    }
    if (ok) return static_cast<std::int64_t>(s);
  }
  return -1;
}

ReimerRecord check_reimer(const CubeEvent& a, const CubeEvent& b) {
  check_dim(a, b);
  ReimerRecord rec;
  rec.lhs = disjoint_occurrence(a, b).card();
  CubeEvent fb = flip_event(b), fa = flip_event(a);
  std::uint64_t rhs = 0, rhs2 = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    rhs += static_cast<std::uint64_t>(std::popcount(a.words()[w] & fb.words()[w]));
    rhs2 += static_cast<std::uint64_t>(std::popcount(fa.words()[w] & b.words()[w]));
  }
  rec.rhs = rhs;
  rec.flip_symmetric = rhs == rhs2;
  rec.holds = rec.lhs <= rec.rhs;
  return rec;
}

ProductBoundRecord check_bk(const CubeEvent& a, const CubeEvent& b) {
  check_dim(a, b);
  ProductBoundRecord rec;
  rec.lhs = disjoint_occurrence(a, b).card() << a.dim();
  rec.rhs = a.card() * b.card();
  rec.holds = rec.lhs <= rec.rhs;
  return rec;
}

bool is_increasing(const CubeEvent& a, std::uint64_t* bad_w, int* bad_bit) {
  std::uint64_t total = 1ull << a.dim();
  for (std::uint64_t w = 0; w < total; ++w) {
    if (!a.test(w)) continue;
    for (int i = 0; i < a.dim(); ++i) {
      if (w & (1ull << i)) continue;
      if (!a.test(w | (1ull << i))) {
        if (bad_w) *bad_w = w;
        if (bad_bit) *bad_bit = i;
        return false;
      }
    }
  }
  return true;
}

bool is_decreasing(const CubeEvent& a, std::uint64_t* bad_w, int* bad_bit) {
  std::uint64_t total = 1ull << a.dim();
  for (std::uint64_t w = 0; w < total; ++w) {
    if (!a.test(w)) continue;
    for (int i = 0; i < a.dim(); ++i) {
      if (!(w & (1ull << i))) continue;
      if (!a.test(w & ~(1ull << i))) {
        if (bad_w) *bad_w = w;
        if (bad_bit) *bad_bit = i;
        return false;
      }
    }
  }
  return true;
}

ProductBoundRecord check_harris(const CubeEvent& a, const CubeEvent& b) {
  check_dim(a, b);
  std::uint64_t w;
  int bit;
  if (!is_increasing(a, &w, &bit))
    throw std::domain_error("check_harris: A not increasing at configuration " + std::to_string(w) +
                            ", bit " + std::to_string(bit));
  if (!is_decreasing(b, &w, &bit))
    throw std::domain_error("check_harris: B not decreasing at configuration " + std::to_string(w) +
                            ", bit " + std::to_string(bit));
  ProductBoundRecord rec;
  std::uint64_t inter = 0;
  for (std::size_t i = 0; i < a.words().size(); ++i)
    inter += static_cast<std::uint64_t>(std::popcount(a.words()[i] & b.words()[i]));
  rec.lhs = inter << a.dim();
  rec.rhs = a.card() * b.card();
  rec.holds = rec.lhs <= rec.rhs;
  return rec;
}

CubeEvent random_event(int n, double density, SplitMix64& rng) {
  CubeEvent e(n);
  std::uint64_t total = 1ull << n;
  for (std::uint64_t w = 0; w < total; ++w)
    if (rng.uniform() < density) e.set(w);
  return e;
}

CubeEvent random_increasing_event(int n, int generators, SplitMix64& rng) {
  CubeEvent e(n);
  std::uint64_t total = 1ull << n;
  for (int g = 0; g < generators; ++g) {
    std::uint64_t base = rng.next() & (total - 1);
    // upward closure of the generator
    std::uint64_t free = (total - 1) ^ base;
    for (std::uint64_t u = free;; u = (u - 1) & free) {
      e.set(base | u);
      if (u == 0) break;
    }
  }
  return e;
}

CubeEvent random_decreasing_event(int n, int generators, SplitMix64& rng) {
  return flip_event(random_increasing_event(n, generators, rng));
}

}  // namespace perco
