#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/numsgp.hpp"

using namespace puiseux;

namespace {

std::vector<BigInt> big(std::initializer_list<long> v) {
  std::vector<BigInt> out;
  for (auto x : v) out.push_back(x);
  return out;
}

std::vector<std::uint64_t> u64(const std::vector<BigInt>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& x : v) out.push_back(x.get_ui());
  return out;
}

NumericalSemigroup random_semigroup(std::mt19937_64& rng, std::uint64_t max_gen = 200) {
  for (;;) {
    const int n = 1 + static_cast<int>(rng() % 5);
    std::vector<BigInt> g;
    BigInt d = 0;
    for (int i = 0; i < n; ++i) {
      g.push_back(static_cast<unsigned long>(2 + rng() % (max_gen - 1)));
      d = gcd(d, g.back());
    }
    if (d == 1) return NumericalSemigroup(g);
  }
}

}  // namespace

TEST_CASE("semigroup construction") {
  CHECK(NumericalSemigroup::of({5, 3, 5}).str() == "<3, 5>");
  CHECK_THROWS_AS(NumericalSemigroup::of({4, 6}), DomainError);
  CHECK_THROWS_AS(NumericalSemigroup::of({0, 1}), DomainError);
  CHECK_THROWS_AS(NumericalSemigroup(std::vector<BigInt>{}), DomainError);
}

TEST_CASE("normalize_to_numerical examples") {
  const std::vector<PosRat> a{PosRat::parse("1/2"), PosRat::parse("1/3")};
  auto ia = normalize_to_numerical(a);
  CHECK(ia.factor == PosRat(6));
  CHECK(ia.gcd_out == 1);
  CHECK(ia.target == NumericalSemigroup::of({2, 3}));
  const std::vector<PosRat> b{PosRat(2), PosRat(3)};
  CHECK(normalize_to_numerical(b).factor == PosRat(1));
  const std::vector<PosRat> c{PosRat::parse("2/3"), PosRat::parse("5/6")};
  auto ic = normalize_to_numerical(c);
  CHECK(ic.factor == PosRat(6));
  CHECK(ic.target == NumericalSemigroup::of({4, 5}));
  const std::vector<PosRat> d{PosRat(4), PosRat(6)};
  auto id = normalize_to_numerical(d);
  CHECK(id.gcd_out == 2);
  CHECK(id.factor == PosRat::parse("1/2"));
  CHECK(id.target == NumericalSemigroup::of({2, 3}));
  CHECK_THROWS_AS(normalize_to_numerical(std::vector<PosRat>{}), DomainError);
  CHECK_THROWS_AS(normalize_to_numerical(std::vector<PosRat>{PosRat(0)}), DomainError);
}

TEST_CASE("normalize_to_numerical is a membership isomorphism") {
  const std::vector<PosRat> gens{PosRat::parse("2/3"), PosRat::parse("5/6"), PosRat::parse("3/4")};
  auto iso = normalize_to_numerical(gens);
  std::vector<oracle::Frac> fr{{2, 3}, {5, 6}, {3, 4}};
  for (long num = 0; num < 80; ++num) {
    for (long den : {1, 2, 3, 4, 6, 12}) {
      auto q = PosRat::normalize(num, den);
      auto img = q * iso.factor;
      bool lib = img.is_integer() && membership_ns(iso.target, img.num()).member;
      auto f = oracle::reduce(num, den);
      CHECK(lib == (num == 0 || oracle::member(f, fr)));
    }
  }
}

TEST_CASE("minimal_generators examples") {
  CHECK(minimal_generators(NumericalSemigroup::of({2, 3})) == big({2, 3}));
  CHECK(minimal_generators(NumericalSemigroup::of({4, 6, 9, 10})) == big({4, 6, 9}));
  CHECK(minimal_generators(NumericalSemigroup::of({3, 4, 5})) == big({3, 4, 5}));
  CHECK(minimal_generators(NumericalSemigroup::of({1, 7})) == big({1}));
}

TEST_CASE("minimal_generators against the oracle, idempotent, same membership") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = random_semigroup(rng, 60);
    auto mins = minimal_generators(s);
    CHECK(u64(mins) == oracle::minimal_generators(u64(s.gens())));
    NumericalSemigroup m(mins);
    CHECK(minimal_generators(m) == mins);
    const BigInt f = frobenius(s);
    const long limit = f.get_si() + s.gens().front().get_si() + s.gens().back().get_si();
    for (long x = 0; x <= limit; ++x) CHECK(membership_ns(s, x).member == membership_ns(m, x).member);
  }
}

TEST_CASE("membership examples") {
  auto s35 = NumericalSemigroup::of({3, 5});
  auto y = membership_ns(s35, 8);
  CHECK(y.member);
  CHECK(y.coeffs == big({1, 1}));
  CHECK_FALSE(membership_ns(s35, 7).member);
  CHECK_FALSE(membership_ns(NumericalSemigroup::of({2, 3}), 1).member);
  CHECK(membership_ns(s35, 0).member);
}

TEST_CASE("membership witnesses sum, and DP and Apery paths agree") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_semigroup(rng);
    auto ref = oracle::reachable(u64(s.gens()), 3000);
    for (long x = 0; x <= 3000; x += 7) {
      auto dp = membership_ns(s, x);
      auto ap = membership_ns(s, x, 0);
      CHECK(dp.member == ref[static_cast<std::size_t>(x)]);
      CHECK(ap.member == dp.member);
      for (const auto* m : {&dp, &ap}) {
        if (!m->member) continue;
        BigInt sum = 0;
        for (std::size_t i = 0; i < s.gens().size(); ++i) {
          CHECK(m->coeffs[i] >= 0);
          sum += m->coeffs[i] * s.gens()[i];
        }
        CHECK(sum == x);
      }
    }
  }
}

TEST_CASE("membership far above the DP capacity uses Apery arithmetic") {
  auto s = NumericalSemigroup::of({1000003, 1000033});
  BigInt x = BigInt("123456789012345678901234567890");
  auto m = membership_ns(s, x);
  CHECK(m.member);
  CHECK(m.coeffs[0] * 1000003 + m.coeffs[1] * 1000033 == x);
}

TEST_CASE("frobenius examples") {
  CHECK(frobenius(NumericalSemigroup::of({3, 5})) == 7);
  CHECK(frobenius(NumericalSemigroup::of({2, 3})) == 1);
  CHECK(frobenius(NumericalSemigroup::of({1})) == -1);
  CHECK(frobenius(NumericalSemigroup::of({6, 9, 20})) == 43);
  auto b = frobenius_bound_holds(NumericalSemigroup::of({3, 5}));
  CHECK(b.frobenius == 7);
  CHECK(b.bound == 8);
  CHECK(b.holds);
  auto b2 = frobenius_bound_holds(NumericalSemigroup::of({2, 3}));
  CHECK((b2.frobenius == 1 && b2.bound == 2 && b2.holds));
  auto b1 = frobenius_bound_holds(NumericalSemigroup::of({1}));
  CHECK((b1.frobenius == -1 && b1.bound == 0 && b1.holds));
}

TEST_CASE("frobenius agrees with the oracle scan, and the table method") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = random_semigroup(rng);
    const BigInt f = frobenius(s);
    CHECK(f == oracle::frobenius(u64(s.gens())));
    CHECK(frobenius_by_table(s) == f);
    NumericalSemigroup m(minimal_generators(s));
    CHECK(frobenius_bound_holds(m).holds);
  }
}

TEST_CASE("apery set") {
  auto a = apery_set(NumericalSemigroup::of({3, 5}));
  CHECK(a == big({0, 10, 5}));
}
