#include <doctest.h>

#include <sstream>

#include "puiseux/suite.hpp"

using namespace puiseux;

TEST_CASE("bundled catalog reproduces") {
  std::vector<SuiteRow> rows;
  CHECK(run_suite(default_catalog(), rows) == 0);
  CHECK(rows.size() == 10);
  for (const auto& r : rows) CHECK_MESSAGE(r.match, r.id << ": " << r.computed);
}

TEST_CASE("a corrupted catalog entry exits 3") {
  auto cases = default_catalog();
  cases[1] = verdict_case("prime_reciprocals", "atomic", make_family("one_over_prime_powers", {{"p", 2}}), 50,
                          Verdict::Atomic);
  std::vector<SuiteRow> rows;
  CHECK(run_suite(cases, rows) == 3);
  CHECK_FALSE(rows[1].match);
  std::ostringstream os;
  print_suite_table(os, rows);
  CHECK(os.str().find("NO") != std::string::npos);
}

TEST_CASE("m-atom grid has 48 cells") { CHECK(m_atom_grid().size() == 48); }

TEST_CASE("S and T membership agreement") {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto rep = st_membership_agreement(3, n);
    CHECK(rep.agreements == rep.probes);
  }
}
