#include <immintrin.h>

#include <algorithm>

#include "puiseux/kernels.hpp"

namespace puiseux::kernels::detail {

// Blocks of 32 entries only read entries below the block once every
// generator is at least 32, so each block is one round of loads and ORs.
void reach_table_avx2(std::span<const std::uint32_t> gens, std::span<std::uint8_t> reach) {
  const std::size_t n = reach.size();
  if (n == 0) return;
  std::uint32_t gmin = UINT32_MAX;
  for (std::uint32_t g : gens) gmin = std::min(gmin, g);
  if (gmin < 32) {
    reach_table_scalar(gens, reach);
    return;
  }
  std::fill(reach.begin(), reach.end(), 0);
  reach[0] = 1;
  std::uint8_t* r = reach.data();
  std::size_t x = std::min<std::size_t>(gmin, n);
  for (; x + 32 <= n; x += 32) {
    __m256i acc = _mm256_setzero_si256();
    for (std::uint32_t g : gens) {
      if (g > x) continue;
      acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(r + x - g)));
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(r + x), acc);
    // Generators landing inside the block reach back below it.
    for (std::uint32_t g : gens) {
      if (g <= x || g >= x + 32) continue;
      for (std::size_t j = g - x; j < 32; ++j) r[x + j] |= r[x + j - g];
    }
  }
  for (; x < n; ++x) {
    std::uint8_t v = 0;
    for (std::uint32_t g : gens) {
      if (g <= x) v |= r[x - g];
    }
    r[x] = v;
  }
}

std::int64_t last_zero_avx2(std::span<const std::uint8_t> table) {
  const std::uint8_t* t = table.data();
  std::size_t i = table.size();
  const __m256i zero = _mm256_setzero_si256();
  while (i >= 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i - 32));
    auto mask = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, zero)));
    if (mask != 0) {
      return static_cast<std::int64_t>(i - 32) + 31 - __builtin_clz(mask);
    }
    i -= 32;
  }
  while (i-- > 0) {
    if (t[i] == 0) return static_cast<std::int64_t>(i);
  }
  return -1;
}

}  // namespace puiseux::kernels::detail
