#include "puiseux/suite.hpp"

#include <iomanip>
#include <sstream>

#include "puiseux/errors.hpp"

namespace puiseux {

namespace {

std::string set_str(const std::set<PosRat>& s) {
  std::string out = "{";
  for (const auto& r : s) out += (out.size() > 1 ? ", " : "") + r.str();
  return out + "}";
}

std::string describe(const ClassificationResult& r) {
  std::string out = verdict_name(r.verdict);
  if (r.certificate) out += std::string(" [") + cert_name(r.certificate->kind) + "]";
  if (r.atoms.kind == AtomsSummary::Kind::Finite) {
    out += " atoms " + set_str(std::set<PosRat>(r.atoms.atoms.begin(), r.atoms.atoms.end()));
  } else if (r.atoms.kind == AtomsSummary::Kind::Empty) {
    out += " atoms {}";
  }
  return out;
}

Presentation fam(const std::string& name, const json& params = json::object()) { return make_family(name, params); }

}  // namespace

SuiteCase verdict_case(std::string id, std::string claim, Presentation pres, std::size_t window, Verdict expected,
                       std::optional<std::set<PosRat>> atoms) {
  SuiteCase c;
  c.id = id;
  c.claim = claim;
  c.run = [id, claim, pres = std::move(pres), window, expected, atoms]() {
    SuiteRow row{id, claim, {}, false};
    try {
      auto r = classify(pres, window);
      row.computed = describe(r);
      row.match = r.verdict == expected && (!r.certificate || verify(*r.certificate, pres));
      if (atoms) {
        row.match = row.match && r.atoms.kind == AtomsSummary::Kind::Finite &&
                    std::set<PosRat>(r.atoms.atoms.begin(), r.atoms.atoms.end()) == *atoms;
      }
    } catch (const std::exception& e) {
      row.computed = std::string("error: ") + e.what();
    }
    return row;
  };
  return c;
}

std::set<PosRat> exactly_m_atoms_computed(std::int64_t m, std::uint64_t p, std::uint64_t q, std::size_t window) {
  auto pres = fam("exactly_m_atoms", {{"m", m}, {"p", p}, {"q", q}});
  auto r = classify(pres, window);
  if (r.atoms.kind != AtomsSummary::Kind::Finite) {
    throw DomainError("atom set of exactly_m_atoms not fully decided at window " + std::to_string(window));
  }
  return {r.atoms.atoms.begin(), r.atoms.atoms.end()};
}

AgreementReport st_membership_agreement(std::uint64_t p, std::size_t n) {
  const auto s = fam("s_t_pair", {{"p", p}, {"side", "S"}}).window(n + 2);
  const auto t = fam("s_t_pair", {{"p", p}, {"side", "T"}}).window(2 * n);
  const std::uint64_t span = std::uint64_t{1} << n;
  AgreementReport rep;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::uint64_t e = 1 + (i * 7) % span;
    BigInt den = pow(BigInt(static_cast<unsigned long>(p)), e);
    if (i % 5 == 4) den *= (p == 5 ? 7 : 5);
    const PosRat q = PosRat::normalize(BigInt(static_cast<unsigned long>(i + 1)), den);
    const auto in_s = member_in_window(q, s).verdict;
    const auto in_t = member_in_window(q, t).verdict;
    ++rep.probes;
    if (in_s == in_t && in_s != MemberVerdict::CapacityExceeded) {
      ++rep.agreements;
    } else {
      rep.disagreements.push_back(q.str() + ": S " + member_verdict_name(in_s) + ", T " + member_verdict_name(in_t));
    }
  }
  return rep;
}

std::vector<SuiteCase> default_catalog() {
  std::vector<SuiteCase> out;
  out.push_back(verdict_case("one_over_prime_powers", "atoms empty (antimatter)", fam("one_over_prime_powers", {{"p", 2}}),
                             50, Verdict::Antimatter));
  out.push_back(SuiteCase{"prime_reciprocals", "atomic; every 1/p is an atom", [] {
    auto pres = fam("prime_reciprocals");
    SuiteRow row{"prime_reciprocals", "atomic; every 1/p is an atom", {}, false};
    auto r = classify(pres, 50);
    row.computed = describe(r) + ", " + std::to_string(r.atoms.atoms.size()) + " window atoms";
    row.match = r.verdict == Verdict::Atomic && r.atoms.atoms.size() == r.window && verify(*r.certificate, pres);
    return row;
  }});
  out.push_back(verdict_case("dyadic_plus_odd_prime_reciprocals", "non-atomic with infinitely many atoms",
                             fam("dyadic_plus_odd_prime_reciprocals"), 50, Verdict::NonAtomicWithAtoms));
  out.push_back(verdict_case("primorial_reciprocals", "atoms empty (antimatter)", fam("primorial_reciprocals"), 50,
                             Verdict::Antimatter));
  out.push_back(verdict_case("increasing_primorial_over_two_powers", "atomic",
                             fam("increasing_primorial_over_two_powers"), 50, Verdict::Atomic));
  out.push_back(verdict_case("two_power_times_prime_reciprocals", "atomic", fam("two_power_times_prime_reciprocals"),
                             50, Verdict::Atomic));
  out.push_back(verdict_case("nonstrongly_bounded_atomic", "atomic, not strongly bounded",
                             fam("nonstrongly_bounded_atomic", {{"p", 2}, {"a1", 3}}), 50, Verdict::Atomic));
  out.push_back(SuiteCase{"s_t_pair", "S and T generate the same antimatter monoid", [] {
    SuiteRow row{"s_t_pair", "S and T generate the same antimatter monoid", {}, false};
    auto s = fam("s_t_pair", {{"p", 3}, {"side", "S"}});
    auto t = fam("s_t_pair", {{"p", 3}, {"side", "T"}});
    auto rs = classify(s, 50);
    auto rt = classify(t, 50);
    auto agree = st_membership_agreement(3, 3);
    std::ostringstream os;
    os << "S " << describe(rs) << "; T " << describe(rt) << "; membership " << agree.agreements << "/" << agree.probes;
    row.computed = os.str();
    row.match = rs.verdict == Verdict::Antimatter && rt.verdict == Verdict::Antimatter &&
                verify(*rs.certificate, s) && verify(*rt.certificate, t) && agree.agreements == agree.probes;
    return row;
  }});
  out.push_back(verdict_case("antimatter_unbounded", "antimatter with unbounded numerators",
                             fam("antimatter_unbounded"), 50, Verdict::Antimatter));
  out.push_back(verdict_case("exactly_m_atoms", "exactly the atoms {2, 3}",
                             fam("exactly_m_atoms", {{"m", 2}, {"p", 3}, {"q", 5}}), 50, Verdict::NonAtomicWithAtoms,
                             std::set<PosRat>{PosRat(2), PosRat(3)}));
  return out;
}

std::vector<SuiteCase> m_atom_grid() {
  std::vector<SuiteCase> out;
  const std::uint64_t primes[] = {3, 5, 7, 11};
  for (std::int64_t m = 1; m <= 5; ++m) {
    for (auto p : primes) {
      for (auto q : primes) {
        if (p == q || static_cast<std::int64_t>(q) <= m) continue;
        std::set<PosRat> expected;
        for (std::int64_t a = m; a <= 2 * m - 1; ++a) expected.insert(PosRat(a));
        std::ostringstream id;
        id << "exactly_m_atoms(m=" << m << ",p=" << p << ",q=" << q << ")";
        out.push_back(verdict_case(id.str(), "atoms " + set_str(expected),
                                   fam("exactly_m_atoms", {{"m", m}, {"p", p}, {"q", q}}), 50,
                                   Verdict::NonAtomicWithAtoms, expected));
      }
    }
  }
  return out;
}

int run_suite(const std::vector<SuiteCase>& cases, std::vector<SuiteRow>& rows) {
  int code = 0;
  for (const auto& c : cases) {
    rows.push_back(c.run());
    if (!rows.back().match) code = 3;
  }
  return code;
}

void print_suite_table(std::ostream& os, const std::vector<SuiteRow>& rows) {
  std::size_t w_id = 2, w_claim = 5;
  for (const auto& r : rows) {
    w_id = std::max(w_id, r.id.size());
    w_claim = std::max(w_claim, r.claim.size());
  }
  os << std::left << std::setw(static_cast<int>(w_id)) << "id" << "  " << std::setw(static_cast<int>(w_claim))
     << "claim" << "  match  computed\n";
  for (const auto& r : rows) {
    os << std::setw(static_cast<int>(w_id)) << r.id << "  " << std::setw(static_cast<int>(w_claim)) << r.claim << "  "
       << std::setw(5) << (r.match ? "yes" : "NO") << "  " << r.computed << "\n";
  }
}

}  // namespace puiseux
