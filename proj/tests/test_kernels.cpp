#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "puiseux/kernels.hpp"

using namespace puiseux::kernels;

namespace {

std::vector<std::uint8_t> table(const std::vector<std::uint32_t>& gens, std::size_t size, Isa isa) {
  std::vector<std::uint8_t> t(size, 0);
  reach_table(gens, t, isa);
  return t;
}

}  // namespace

TEST_CASE("isa detection") {
  const Isa isa = detected_isa();
  CHECK((isa == Isa::Scalar || isa == Isa::Avx2));
  MESSAGE("detected isa: " << isa_name(isa));
}

TEST_CASE("scalar reach table matches the oracle") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> gens;
    std::vector<std::uint64_t> g64;
    const int n = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < n; ++i) {
      gens.push_back(1 + rng() % 120);
      g64.push_back(gens.back());
    }
    const std::size_t size = 1 + rng() % 3000;
    auto t = table(gens, size, Isa::Scalar);
    auto ref = oracle::reachable(g64, size - 1);
    for (std::size_t x = 0; x < size; ++x) CHECK(static_cast<bool>(t[x]) == ref[x]);
  }
}

TEST_CASE("AVX2 and scalar kernels agree") {
  if (detected_isa() != Isa::Avx2) {
    MESSAGE("AVX2 unavailable; dispatch resolves to scalar");
  }
  std::mt19937 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::uint32_t> gens;
    const int n = 1 + static_cast<int>(rng() % 6);
    const std::uint32_t span = trial % 2 ? 200 : 40;
    for (int i = 0; i < n; ++i) gens.push_back(1 + rng() % span);
    if (trial % 3 == 0) gens.push_back(32 + rng() % 8);
    const std::size_t size = 1 + rng() % 5000;
    auto a = table(gens, size, Isa::Scalar);
    auto b = table(gens, size, Isa::Avx2);
    REQUIRE(a == b);
    CHECK(last_zero(a, Isa::Scalar) == last_zero(b, Isa::Avx2));
  }
}

TEST_CASE("last_zero edge cases") {
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Auto}) {
    std::vector<std::uint8_t> all(100, 1);
    CHECK(last_zero(all, isa) == -1);
    all[0] = 0;
    CHECK(last_zero(all, isa) == 0);
    all[63] = 0;
    CHECK(last_zero(all, isa) == 63);
    all[99] = 0;
    CHECK(last_zero(all, isa) == 99);
    std::vector<std::uint8_t> empty;
    CHECK(last_zero(empty, isa) == -1);
  }
}

TEST_CASE("preferred isa override") {
  const Isa before = preferred_isa();
  set_preferred_isa(Isa::Scalar);
  std::vector<std::uint32_t> gens{3, 5};
  auto t = table(gens, 20, Isa::Auto);
  CHECK(last_zero(t) == 7);
  set_preferred_isa(before);
}
