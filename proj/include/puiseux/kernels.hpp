#pragma once

#include <cstdint>
#include <span>

namespace puiseux::kernels {

enum class Isa { Auto, Scalar, Avx2 };

/// Best instruction set available on the running CPU.
Isa detected_isa();
const char* isa_name(Isa isa);

/// Process-wide choice used when a call passes Isa::Auto. Auto means detect.
void set_preferred_isa(Isa isa);
Isa preferred_isa();

/// Coin-problem reachability: reach[0] = 1 and reach[x] = OR_i reach[x - g_i].
/// Generators must be positive; entries of `gens` larger than the table are
/// ignored.
void reach_table(std::span<const std::uint32_t> gens, std::span<std::uint8_t> reach,
                 Isa isa = Isa::Auto);

/// Index of the last zero byte, or -1 when every byte is nonzero.
std::int64_t last_zero(std::span<const std::uint8_t> table, Isa isa = Isa::Auto);

namespace detail {
void reach_table_scalar(std::span<const std::uint32_t> gens, std::span<std::uint8_t> reach);
std::int64_t last_zero_scalar(std::span<const std::uint8_t> table);
#if defined(PUISEUX_HAVE_AVX2)
void reach_table_avx2(std::span<const std::uint32_t> gens, std::span<std::uint8_t> reach);
std::int64_t last_zero_avx2(std::span<const std::uint8_t> table);
#endif
}  // namespace detail

}  // namespace puiseux::kernels
