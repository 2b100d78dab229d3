#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "puiseux/classify.hpp"

namespace puiseux {

struct SuiteRow {
  std::string id;
  std::string claim;
  std::string computed;
  bool match = false;
};

struct SuiteCase {
  std::string id;
  std::string claim;
  std::function<SuiteRow()> run;
};

/// Case that classifies `pres` at `window` and compares the verdict, and the
/// atom set when `atoms` is given.
SuiteCase verdict_case(std::string id, std::string claim, Presentation pres, std::size_t window, Verdict expected,
                       std::optional<std::set<PosRat>> atoms = std::nullopt);

/// The ten bundled catalog examples.
std::vector<SuiteCase> default_catalog();

/// exactly_m_atoms over m in 1..5 and p, q in {3, 5, 7, 11} with p != q, q > m.
std::vector<SuiteCase> m_atom_grid();

/// Atoms of exactly_m_atoms(m, p, q) as classified at `window`.
std::set<PosRat> exactly_m_atoms_computed(std::int64_t m, std::uint64_t p, std::uint64_t q, std::size_t window = 50);

struct AgreementReport {
  std::size_t probes = 0;
  std::size_t agreements = 0;
  std::vector<std::string> disagreements;
};

/// Membership of 20 probes a/p^e (1 <= e <= 2^n) in the S-window of n + 2 terms
/// and the T-window of n pairs.
AgreementReport st_membership_agreement(std::uint64_t p, std::size_t n);

/// Returns 0 when every row matches, 3 otherwise. Rows are appended to `rows`.
int run_suite(const std::vector<SuiteCase>& cases, std::vector<SuiteRow>& rows);

void print_suite_table(std::ostream& os, const std::vector<SuiteRow>& rows);

}  // namespace puiseux
