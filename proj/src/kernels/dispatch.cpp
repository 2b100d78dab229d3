#include "puiseux/kernels.hpp"

#include <atomic>

namespace puiseux::kernels {

namespace {
std::atomic<Isa> preferred{Isa::Auto};
}  // namespace

void set_preferred_isa(Isa isa) { preferred.store(isa); }
Isa preferred_isa() { return preferred.load(); }

Isa detected_isa() {
#if defined(PUISEUX_HAVE_AVX2)
  static const Isa isa = __builtin_cpu_supports("avx2") ? Isa::Avx2 : Isa::Scalar;
  return isa;
#else
  return Isa::Scalar;
#endif
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Auto: return "auto";
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

namespace {
Isa resolve(Isa isa) {
  if (isa == Isa::Auto) isa = preferred.load();
  if (isa == Isa::Auto) return detected_isa();
  if (isa == Isa::Avx2 && detected_isa() != Isa::Avx2) return Isa::Scalar;
  return isa;
}
}  // namespace

void reach_table(std::span<const std::uint32_t> gens, std::span<std::uint8_t> reach, Isa isa) {
#if defined(PUISEUX_HAVE_AVX2)
  if (resolve(isa) == Isa::Avx2) return detail::reach_table_avx2(gens, reach);
#else
  (void)isa;
#endif
  detail::reach_table_scalar(gens, reach);
}

std::int64_t last_zero(std::span<const std::uint8_t> table, Isa isa) {
#if defined(PUISEUX_HAVE_AVX2)
  if (resolve(isa) == Isa::Avx2) return detail::last_zero_avx2(table);
#else
  (void)isa;
#endif
  return detail::last_zero_scalar(table);
}

}  // namespace puiseux::kernels
