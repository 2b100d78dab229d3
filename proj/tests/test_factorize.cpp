#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "puiseux/errors.hpp"
#include "puiseux/factorize.hpp"
#include "puiseux/numsgp.hpp"

using namespace puiseux;

namespace {

std::vector<PosRat> rats(std::initializer_list<const char*> v) {
  std::vector<PosRat> out;
  for (auto s : v) out.push_back(PosRat::parse(s));
  return out;
}

PosRat resum(const Factorization& f, const std::vector<PosRat>& gens) {
  return f.value([&](std::size_t i) { return gens[i - 1]; });
}

}  // namespace

TEST_CASE("member_in_window examples") {
  auto a = member_in_window(PosRat::parse("5/6"), rats({"1/2", "1/3"}));
  REQUIRE(a.verdict == MemberVerdict::Yes);
  CHECK(a.witness.coeffs == std::map<std::size_t, BigInt>{{1, 1}, {2, 1}});
  auto b = member_in_window(PosRat::parse("1/4"), rats({"1/12", "1/20"}));
  REQUIRE(b.verdict == MemberVerdict::Yes);
  CHECK(b.witness.coeffs == std::map<std::size_t, BigInt>{{1, 3}});
  CHECK(member_in_window(PosRat::parse("1/2"), rats({"1/3", "1/5", "1/7"})).verdict == MemberVerdict::No);
  CHECK(member_in_window(PosRat(0), rats({"1/3"})).verdict == MemberVerdict::Yes);
}

TEST_CASE("member_in_window agrees with the rational oracle") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<oracle::Frac> fr;
    std::vector<PosRat> gens;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      auto f = oracle::reduce(static_cast<std::int64_t>(1 + rng() % 12), static_cast<std::int64_t>(1 + rng() % 12));
      fr.push_back(f);
      gens.push_back(PosRat::normalize(f.num, f.den));
    }
    for (int k = 0; k < 20; ++k) {
      auto f = oracle::reduce(static_cast<std::int64_t>(1 + rng() % 40), static_cast<std::int64_t>(1 + rng() % 12));
      const PosRat q = PosRat::normalize(f.num, f.den);
      auto m = member_in_window(q, gens);
      REQUIRE(m.verdict != MemberVerdict::CapacityExceeded);
      CHECK((m.verdict == MemberVerdict::Yes) == oracle::member(f, fr));
      if (m.verdict == MemberVerdict::Yes) CHECK(resum(m.witness, gens) == q);
    }
  }
}

TEST_CASE("member_in_window agrees with numsgp on integral lists") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<BigInt> g;
    std::vector<PosRat> gens;
    BigInt d = 0;
    while (g.empty() || d != 1) {
      g.push_back(static_cast<unsigned long>(2 + rng() % 40));
      d = gcd(d, g.back());
    }
    for (const auto& x : g) gens.push_back(PosRat(x));
    NumericalSemigroup s(g);
    const long limit = frobenius(s).get_si() + 20;
    for (long x = 0; x <= limit; ++x) {
      CHECK((member_in_window(PosRat(x), gens).verdict == MemberVerdict::Yes) == membership_ns(s, x).member);
    }
  }
}

TEST_CASE("capacity exceeded is reported, not guessed") {
  auto gens = rats({"2/1000003", "3/1000033"});
  auto m = member_in_window(PosRat::parse("1/1000037"), gens, 1000);
  CHECK(m.verdict == MemberVerdict::No);
  auto big = member_in_window(PosRat(1), rats({"1000003/3", "1000033/5", "1000037/7"}), 1000);
  CHECK(big.verdict != MemberVerdict::Yes);
}

TEST_CASE("window monotonicity") {
  auto pres = make_family("one_over_prime_powers", {{"p", 3}});
  for (long a = 1; a < 60; ++a) {
    for (long e = 1; e < 6; ++e) {
      const PosRat q = PosRat::normalize(a, pow(BigInt(3), static_cast<unsigned long>(e)));
      bool prev = false;
      for (std::size_t n = 1; n <= 7; ++n) {
        bool now = member_in_window(q, pres.window(n)).verdict == MemberVerdict::Yes;
        CHECK((!prev || now));
        prev = now;
      }
    }
  }
}

TEST_CASE("atom_status examples") {
  auto primes = make_family("prime_reciprocals");
  auto a = atom_status(PosRat::parse("1/7"), primes, 10);
  CHECK(a.kind == AtomStatus::Kind::Atom);
  CHECK(a.certificate == "valuation obstruction at p=7");
  CHECK(verify_atom_status(PosRat::parse("1/7"), primes, a));

  auto pp = make_family("one_over_prime_powers", {{"p", 3}});
  auto b = atom_status(PosRat::parse("1/9"), pp, 5);
  REQUIRE(b.kind == AtomStatus::Kind::NotAtom);
  CHECK(b.witness.coeffs == std::map<std::size_t, BigInt>{{3, 3}});
  CHECK(verify_atom_status(PosRat::parse("1/9"), pp, b));

  auto em = make_family("exactly_m_atoms", {{"m", 2}, {"p", 3}, {"q", 5}});
  auto c = atom_status(PosRat(2), em, 10);
  CHECK(c.kind == AtomStatus::Kind::Atom);
  CHECK(c.certificate == "valuation obstruction at p=5");
  CHECK(verify_atom_status(PosRat(2), em, c));
}

TEST_CASE("NotAtom at window N stays NotAtom at larger windows") {
  auto em = make_family("exactly_m_atoms", {{"m", 3}, {"p", 5}, {"q", 7}});
  for (std::size_t n = 4; n < 12; ++n) {
    for (const auto& wa : atoms_in_window(em, n)) {
      if (wa.status.kind != AtomStatus::Kind::NotAtom) continue;
      CHECK(atom_status(wa.term, em, n + 3).kind == AtomStatus::Kind::NotAtom);
    }
  }
}

TEST_CASE("atoms_in_window examples") {
  for (const auto& wa : atoms_in_window(make_family("one_over_prime_powers", {{"p", 2}}), 4)) {
    CHECK(wa.status.kind == AtomStatus::Kind::NotAtom);
  }
  auto dy = make_family("dyadic_plus_odd_prime_reciprocals");
  for (const auto& wa : atoms_in_window(dy, 8)) {
    const bool dyadic = wa.index % 2 == 1;
    CHECK(wa.status.kind == (dyadic ? AtomStatus::Kind::NotAtom : AtomStatus::Kind::Atom));
    CHECK(verify_atom_status(wa.term, dy, wa.status));
  }
  auto fin = Presentation::finite(rats({"2", "3"}));
  for (const auto& wa : atoms_in_window(fin, 2)) CHECK(wa.status.kind == AtomStatus::Kind::Atom);
  auto fin2 = Presentation::finite(rats({"2", "3", "5"}));
  CHECK(atoms_in_window(fin2, 3)[2].status.kind == AtomStatus::Kind::NotAtom);
}

TEST_CASE("dyadic terms have no factorization over the odd-prime terms") {
  auto dy = make_family("dyadic_plus_odd_prime_reciprocals");
  std::vector<PosRat> t;
  for (std::size_t k = 1; k <= 12; ++k) t.push_back(PosRat::normalize(1, static_cast<unsigned long>(nth_odd_prime(k))));
  for (unsigned long n = 1; n <= 5; ++n) {
    CHECK(member_in_window(PosRat::normalize(1, pow(BigInt(2), n)), t).verdict == MemberVerdict::No);
  }
}

TEST_CASE("finite atom status matches the oracle minimal generators") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::uint64_t> g;
    std::vector<PosRat> gens;
    const int n = 2 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      g.push_back(2 + rng() % 30);
      gens.push_back(PosRat(static_cast<long long>(g.back())));
    }
    auto mins = oracle::minimal_generators(g);
    auto pres = Presentation::finite(gens);
    for (const auto& wa : atoms_in_window(pres, gens.size())) {
      const auto v = wa.term.num().get_ui();
      bool atom = std::find(mins.begin(), mins.end(), v) != mins.end();
      CHECK((wa.status.kind == AtomStatus::Kind::Atom) == atom);
      CHECK(verify_atom_status(wa.term, pres, wa.status));
    }
  }
}

TEST_CASE("factorization printing") {
  Factorization f;
  f.coeffs = {{1, 2}, {3, 1}};
  auto gens = rats({"1/2", "1/3", "1/5"});
  CHECK(f.str(PosRat::parse("6/5"), [&](std::size_t i) { return gens[i - 1]; }) == "6/5 = 2·(1/2) + 1·(1/5)");
}
