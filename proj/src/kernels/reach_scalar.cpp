#include <algorithm>

#include "puiseux/kernels.hpp"

namespace puiseux::kernels::detail {

void reach_table_scalar(std::span<const std::uint32_t> gens, std::span<std::uint8_t> reach) {
  if (reach.empty()) return;
  std::fill(reach.begin(), reach.end(), 0);
  reach[0] = 1;
  const std::size_t n = reach.size();
  for (std::size_t x = 1; x < n; ++x) {
    std::uint8_t v = 0;
    for (std::uint32_t g : gens) {
      if (g <= x) v |= reach[x - g];
    }
    reach[x] = v;
  }
}

std::int64_t last_zero_scalar(std::span<const std::uint8_t> table) {
  for (std::size_t i = table.size(); i-- > 0;) {
    if (table[i] == 0) return static_cast<std::int64_t>(i);
  }
  return -1;
}

}  // namespace puiseux::kernels::detail
