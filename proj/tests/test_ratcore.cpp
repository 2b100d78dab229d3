#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/ratcore.hpp"

using namespace puiseux;

TEST_CASE("normalize reduces to lowest terms") {
  CHECK(PosRat::normalize(6, 4) == PosRat::parse("3/2"));
  CHECK(PosRat::normalize(1, 1).str() == "1/1");
  auto r = PosRat::normalize(23, 6);
  CHECK(r.num() == 23);
  CHECK(r.den() == 6);
  CHECK(PosRat::normalize(0, 7).den() == 1);
  CHECK_THROWS_AS(PosRat::normalize(1, 0), DomainError);
  CHECK_THROWS_WITH(PosRat::normalize(1, 0), "zero denominator");
  CHECK_THROWS_AS(PosRat::normalize(-1, 2), DomainError);
}

TEST_CASE("normalize is idempotent") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    auto r = PosRat::normalize(static_cast<long>(rng() % 1000), static_cast<long>(1 + rng() % 1000));
    CHECK(PosRat::normalize(r.num(), r.den()) == r);
    CHECK(gcd(r.num(), r.den()) == 1);
  }
}

TEST_CASE("parse and arithmetic") {
  CHECK(PosRat::parse(" 5/10 ") == PosRat::normalize(1, 2));
  CHECK(PosRat::parse("7") == PosRat(7));
  CHECK_THROWS(PosRat::parse("1/"));
  CHECK_THROWS(PosRat::parse("a/2"));
  CHECK(PosRat::parse("1/2") + PosRat::parse("1/3") == PosRat::parse("5/6"));
  CHECK(PosRat::parse("2/3") * PosRat::parse("3/4") == PosRat::parse("1/2"));
  CHECK(PosRat::parse("1/2") / PosRat::parse("1/4") == PosRat(2));
  CHECK(*checked_sub(PosRat::parse("1/2"), PosRat::parse("1/3")) == PosRat::parse("1/6"));
  CHECK_FALSE(checked_sub(PosRat::parse("1/3"), PosRat::parse("1/2")));
  CHECK(PosRat::parse("1/3") < PosRat::parse("1/2"));
}

TEST_CASE("ExtInt ordering and infinity") {
  CHECK(ExtInt::infinity() > ExtInt(1000000));
  CHECK((ExtInt::infinity() + ExtInt(3)).is_infinite());
  CHECK((ExtInt(2) + ExtInt(3)) == ExtInt(5));
  CHECK(ExtInt::infinity().str() == "inf");
}

TEST_CASE("pval examples") {
  CHECK(pval(2, PosRat::parse("3/4")) == ExtInt(-2));
  CHECK(pval(5, PosRat(0)).is_infinite());
  CHECK(pval(3, PosRat(18)) == ExtInt(2));
  CHECK_THROWS_WITH_AS(pval(4, PosRat(2)), "not a prime", DomainError);
}

TEST_CASE("valuation axioms on random pairs") {
  std::mt19937_64 rng(11);
  const std::uint64_t primes[] = {2, 3, 5, 7};
  for (int i = 0; i < 10000; ++i) {
    auto rnd = [&] { return PosRat::normalize(static_cast<long>(1 + rng() % 500), static_cast<long>(1 + rng() % 500)); };
    PosRat r = rnd(), s = rnd();
    auto p = primes[rng() % 4];
    CHECK(pval(p, r + s) >= std::min(pval(p, r), pval(p, s)));
    CHECK(pval(p, r * s) == pval(p, r) + pval(p, s));
  }
}

TEST_CASE("pval agrees with repeated division") {
  for (std::int64_t n = 1; n < 2000; ++n) {
    for (std::uint64_t p : {2u, 3u, 7u, 11u}) {
      CHECK(pval(p, PosRat(static_cast<long long>(n))) == ExtInt(oracle::pval(p, n)));
    }
  }
}

TEST_CASE("primes") {
  for (std::uint64_t n = 0; n < 5000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
  CHECK(is_prime(18446744073709551557ull));
  CHECK_FALSE(is_prime(3215031751ull));
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(25) == 97);
  CHECK(nth_odd_prime(1) == 3);
  CHECK(nth_odd_prime(12) == 41);
  CHECK(prime_index(97) == 25);
  CHECK(primes_up_to(20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
  auto f = factor(BigInt("600851475143"));
  REQUIRE(f);
  CHECK(f->back().first == 6857);
}

TEST_CASE("prime_spectrum and support") {
  CHECK(prime_spectrum(12) == std::set<std::uint64_t>{2, 3});
  CHECK(prime_spectrum(1).empty());
  CHECK(prime_spectrum(23) == std::set<std::uint64_t>{23});
  CHECK_THROWS_AS(prime_spectrum(0), DomainError);
  const std::vector<std::uint64_t> p{2, 3, 5};
  CHECK(support(12, p) == std::set<std::size_t>{1, 2});
  CHECK(support(1, p).empty());
  CHECK(support(50, p) == std::set<std::size_t>{1, 3});
  CHECK_THROWS_AS(support(6, std::vector<std::uint64_t>{3, 2}), DomainError);
  CHECK_THROWS_AS(support(6, std::vector<std::uint64_t>{2, 4}), DomainError);
}

TEST_CASE("prime_spectrum matches support over all primes up to n") {
  for (std::uint64_t n = 1; n < 500; ++n) {
    auto ps = primes_up_to(n);
    std::set<std::uint64_t> back;
    for (auto i : support(BigInt(static_cast<unsigned long>(n)), ps)) back.insert(ps[i - 1]);
    CHECK(back == prime_spectrum(n));
  }
}

TEST_CASE("sequence_spectrum examples") {
  const std::vector<std::uint64_t> fours{4, 4, 4, 4}, ones{1, 1, 1, 1}, alt{2, 3, 2, 3, 2, 3};
  auto a = sequence_spectrum(fours, 4);
  CHECK(a.verdict == SpectrumVerdict::StabilizesAt);
  CHECK(a.stabilizers_on_window == std::set<std::uint64_t>{2});
  CHECK(sequence_spectrum(fours, 4, true).verdict == SpectrumVerdict::Inconclusive);
  CHECK(sequence_spectrum(ones, 1).verdict == SpectrumVerdict::EmptyOnWindow);
  auto c = sequence_spectrum(alt, 3);
  CHECK(c.verdict == SpectrumVerdict::EmptyOnWindow);
  CHECK(c.divisor_primes == std::set<std::uint64_t>{2, 3});
  CHECK_THROWS_WITH_AS(sequence_spectrum(alt, 2), "bound violated", DomainError);
}

TEST_CASE("coprime_subset examples") {
  const std::vector<std::uint64_t> alt{2, 3, 2, 3, 2, 3, 2, 3};
  CHECK(*coprime_subset(alt, 3, 0) == std::vector<std::size_t>{1, 2});
  const std::vector<std::uint64_t> ones(8, 1);
  CHECK(*coprime_subset(ones, 1, 2) == std::vector<std::size_t>{3, 4});
  const std::vector<std::uint64_t> tri{6, 10, 15, 6, 10, 15, 6, 10, 15};
  CHECK(*coprime_subset(tri, 15, 0) == std::vector<std::size_t>{1, 2, 3});
  CHECK(oracle::min_coprime_subset_size(tri, 0) == 3);
  const std::vector<std::uint64_t> evens{2, 4, 6, 8};
  CHECK_FALSE(coprime_subset(evens, 8, 0));
}

TEST_CASE("coprime_subset postconditions on random empty-spectrum windows") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t bound = 2 + rng() % 60;
    std::vector<std::uint64_t> w(24);
    for (auto& x : w) x = 1 + rng() % bound;
    if (sequence_spectrum(w, bound).verdict != SpectrumVerdict::EmptyOnWindow) continue;
    const std::size_t after = rng() % 4;
    auto got = coprime_subset(w, bound, after);
    std::uint64_t g = 0;
    for (std::size_t i = after; i < w.size(); ++i) g = std::gcd(g, w[i]);
    REQUIRE(got.has_value() == (g == 1));
    if (!got) continue;
    std::uint64_t gg = 0;
    for (auto i : *got) {
      CHECK(i > after);
      gg = std::gcd(gg, w[i - 1]);
    }
    CHECK(gg == 1);
    CHECK(got->size() <= bound + 1);
    CHECK(std::is_sorted(got->begin(), got->end()));
  }
}
