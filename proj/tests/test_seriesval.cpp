#include <doctest.h>

#include <random>

#include "puiseux/errors.hpp"
#include "puiseux/seriesval.hpp"

using namespace puiseux;

namespace {

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("parse_series examples") {
  auto a = parse_series("T^(1/2) + T");
  REQUIRE(a.terms().size() == 2);
  CHECK(a.terms().begin()->first == q(1, 2));
  CHECK(a.terms().begin()->second == 1);
  CHECK(a.terms().rbegin()->first == 1);
  CHECK(a.ramification() == 2);
  auto b = parse_series("3*T^(-2) + T^(1/3)");
  CHECK(b.terms().at(q(-2)) == 3);
  CHECK(b.terms().at(q(1, 3)) == 1);
  CHECK(b.ramification() == 3);
  CHECK(parse_series("T^(1/2) - T^(1/2)").is_zero());
  CHECK(parse_series("T + T").terms().at(q(1)) == 2);
  CHECK(parse_series("  - 5/2 * T ^ 3 +1").str() == "1 - 5/2*T^3");
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_series("T^(1/2) + * T");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position == 10);
  }
  CHECK_THROWS_AS(parse_series(""), ParseError);
  CHECK_THROWS_AS(parse_series("T^(1/0)"), ParseError);
  CHECK_THROWS_AS(parse_series("2T"), ParseError);
  CHECK_THROWS_AS(parse_series("T^"), ParseError);
  CHECK_THROWS_AS(parse_series("T^(1/2"), ParseError);
}

TEST_CASE("val_p_series examples") {
  CHECK(*val_p_series(parse_series("3*T^(-2) + T^(1/3)")) == -2);
  CHECK_FALSE(val_p_series(parse_series("0")));
  CHECK(*val_p_series(parse_series("T^(1/2) + T")) == q(1, 2));
  CHECK(*val_p_series(parse_series("7")) == 0);
}

TEST_CASE("monoid_image examples") {
  auto a = monoid_image({parse_series("T^(1/2)"), parse_series("T^(1/3)")});
  CHECK(a.stream().terms == std::vector<PosRat>{PosRat::parse("1/3"), PosRat::parse("1/2")});
  auto b = monoid_image({parse_series("T + T^2"), parse_series("T")});
  CHECK(b.stream().terms == std::vector<PosRat>{PosRat(1)});
  CHECK_THROWS_WITH_AS(monoid_image({parse_series("T^(-1)")}), "positive valuations required", DomainError);
  CHECK_THROWS_AS(monoid_image({parse_series("0")}), DomainError);
}

TEST_CASE("print then parse is the identity on canonical forms") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    PuiseuxSeries s;
    const int n = static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) {
      long c = static_cast<long>(rng() % 9) - 4;
      if (c == 0) c = 1;
      s = s + PuiseuxSeries::monomial(q(c, 1 + static_cast<long>(rng() % 3)),
                                      q(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4)));
    }
    CHECK(parse_series(s.str()) == s);
  }
}

TEST_CASE("valuation axioms on random series pairs") {
  std::mt19937_64 rng(43);
  auto random_series = [&] {
    PuiseuxSeries s;
    const int n = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < n; ++k) {
      s = s + PuiseuxSeries::monomial(q(static_cast<long>(rng() % 5) + 1) * (rng() % 2 ? 1 : -1),
                                      q(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3)));
    }
    return s;
  };
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto s = random_series(), t = random_series();
    if (s.is_zero() || t.is_zero()) continue;
    ++checked;
    CHECK(*val_p_series(s * t) == *val_p_series(s) + *val_p_series(t));
    CHECK(*val_p_series(leading_product(s, t)) == *val_p_series(s) + *val_p_series(t));
    auto sum = s + t;
    if (!sum.is_zero()) CHECK(*val_p_series(sum) >= std::min(*val_p_series(s), *val_p_series(t)));
  }
  CHECK(checked > 900);
}
