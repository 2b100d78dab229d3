#include "puiseux/classify.hpp"

#include <algorithm>
#include <map>

#include "puiseux/errors.hpp"

namespace puiseux {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Atomic: return "Atomic";
    case Verdict::Antimatter: return "Antimatter";
    case Verdict::NonAtomicWithAtoms: return "NonAtomicWithAtoms";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

const char* cert_name(CertKind k) {
  switch (k) {
    case CertKind::FinitelyGenerated: return "finitely_generated";
    case CertKind::BoundedDenominators: return "bounded_denominators";
    case CertKind::ZeroNotLimitPoint: return "zero_not_limit_point";
    case CertKind::DivisorChainAntimatter: return "divisor_chain_antimatter";
    case CertKind::ChainMembership: return "chain_membership";
    case CertKind::SimultaneousValuations: return "simultaneous_valuations";
    case CertKind::StronglyBoundedFinitePrimes: return "strongly_bounded_finite_primes";
    case CertKind::BoundedGeneratingSubset: return "bounded_generating_subset";
    case CertKind::GeneratedByAtoms: return "generated_by_atoms";
    case CertKind::GeneratorsSplit: return "generators_split";
    case CertKind::ValuationSeparation: return "valuation_separation";
  }
  return "?";
}

bool Certificate::conditional() const {
  if (!family_facts.empty()) return true;
  return std::any_of(used_declared_flags.begin(), used_declared_flags.end(),
                     [](const StructuralFlag& f) { return f.provenance.declared; });
}

json Certificate::to_json() const {
  json flags = json::array();
  for (const auto& f : used_declared_flags) flags.push_back(f.to_json());
  return {{"theorem", cert_name(kind)},     {"used_declared_flags", flags},
          {"family_facts", family_facts},   {"window", window},
          {"witnesses", witnesses},         {"conditional_on_declarations", conditional()}};
}

json AtomsSummary::to_json() const {
  json list = json::array();
  for (const auto& a : atoms) list.push_back(a.str());
  switch (kind) {
    case Kind::Finite: return {{"kind", "finite"}, {"atoms", list}};
    case Kind::InfiniteWithPattern: return {{"kind", "infinite_with_pattern"}, {"pattern", pattern}, {"window_atoms", list}};
    case Kind::Empty: return {{"kind", "empty"}};
    case Kind::Unknown: return {{"kind", "unknown"}, {"window_atoms", list}};
  }
  return {};
}

json ClassificationResult::to_json(const Presentation& pres) const {
  json j;
  j["label"] = pres.label();
  j["verdict"] = verdict_name(verdict);
  j["theorem"] = certificate ? json(cert_name(certificate->kind)) : json(nullptr);
  j["witnesses"] = certificate ? certificate->witnesses : json(nullptr);
  json used = json::array();
  if (certificate) {
    for (const auto& f : certificate->used_declared_flags) used.push_back(f.to_json());
    j["family_facts"] = certificate->family_facts;
    j["conditional_on_declarations"] = certificate->conditional();
  }
  j["used_declared_flags"] = used;
  j["window"] = window;
  j["atoms_summary"] = atoms.to_json();
  json wa = json::array();
  for (const auto& a : window_atoms) wa.push_back(puiseux::to_json(a.status, a.term, pres));
  j["window_atoms"] = wa;
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

namespace {

std::vector<StructuralFlag> used_flags(const Presentation& pres, std::initializer_list<FlagKind> kinds) {
  std::vector<StructuralFlag> out;
  for (auto k : kinds) {
    if (const auto* f = pres.find(k)) out.push_back(*f);
  }
  return out;
}

bool flag_usable(const Presentation& pres, FlagKind kind, std::size_t n) {
  const auto* f = pres.find(kind);
  if (!f) return false;
  for (const auto& c : verify_flags(pres.with_flags({*f}), n)) {
    if (c.status == FlagStatus::Refuted) return false;
  }
  return true;
}

json rat_list_json(const std::vector<PosRat>& v) {
  json j = json::array();
  for (const auto& r : v) j.push_back(r.str());
  return j;
}

json int_list_json(const std::vector<BigInt>& v) {
  json j = json::array();
  for (const auto& r : v) j.push_back(to_string(r));
  return j;
}

std::size_t longest_increasing_chain(const std::vector<std::vector<std::int64_t>>& vals,
                                     std::vector<std::size_t>& chain) {
  const std::size_t n = vals.size();
  std::vector<std::size_t> best(n, 1), prev(n, SIZE_MAX);
  auto less = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < vals[a].size(); ++k) {
      if (!(vals[a][k] < vals[b][k])) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (less(j, i) && best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        prev[i] = j;
      }
    }
  }
  chain.clear();
  if (n == 0) return 0;
  std::size_t end = static_cast<std::size_t>(std::max_element(best.begin(), best.end()) - best.begin());
  for (std::size_t at = end; at != SIZE_MAX; at = prev[at]) chain.push_back(at);
  std::reverse(chain.begin(), chain.end());
  return chain.size();
}

std::vector<std::int64_t> den_valuations(const PosRat& r, const std::vector<std::uint64_t>& primes) {
  std::vector<std::int64_t> v;
  for (auto p : primes) v.push_back(valuation(r.den(), p));
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

void check_flag_consistency(const Presentation& pres, std::size_t n) {
  auto has = [&](FlagKind k) { return pres.has(k); };
  if (has(FlagKind::DenominatorsBounded) && has(FlagKind::DenominatorsUnbounded)) {
    throw FlagConflictError("denominators_bounded and denominators_unbounded both declared");
  }
  if (has(FlagKind::InfimumPositive) && has(FlagKind::DenominatorsUnbounded) && has(FlagKind::NumeratorsBounded)) {
    throw FlagConflictError(
        "infimum_positive contradicts bounded numerators with unbounded denominators (terms tend to 0)");
  }
  for (const auto& c : verify_flags(pres, n)) {
    if (c.status == FlagStatus::Refuted) {
      throw FlagRefutedError("flag " + c.flag.str() + " refuted: " + c.detail);
    }
  }
}

std::optional<Certificate> check_bounded_denominators(const Presentation& pres, std::size_t n) {
  const auto* flag = pres.find(FlagKind::DenominatorsBounded);
  if (!pres.is_finite() && !flag) return std::nullopt;
  const auto base = pres.is_finite() ? pres : pres.unscaled();
  const auto w = base.window(n);
  BigInt m = 1;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (flag && flag->bound && w[i].den() > *flag->bound) {
      throw FlagRefutedError("denominators_bounded: d(r_" + std::to_string(i + 1) + ") exceeds D");
    }
    m = lcm(m, w[i].den());
  }
  json minima = json::object();
  if (auto fac = factor(m)) {
    for (auto [p, e] : *fac) {
      std::int64_t lo = 0;
      for (const auto& r : w) lo = std::min(lo, pval(p, r).value());
      minima[std::to_string(p)] = lo;
    }
  }
  std::vector<PosRat> image_r;
  std::vector<BigInt> image;
  for (const auto& r : w) {
    image_r.push_back(r * PosRat(m));
    image.push_back(image_r.back().num());
  }
  auto iso = normalize_to_numerical(image_r);
  auto mins = minimal_generators(iso.target);
  std::vector<PosRat> atoms;
  for (const auto& g : mins) atoms.push_back(PosRat::normalize(g * iso.gcd_out, m));
  Certificate c{CertKind::BoundedDenominators, {}, {}, w.size(), {}};
  if (flag) c.used_declared_flags.push_back(*flag);
  c.witnesses = {{"m", to_string(m)},
                 {"valuation_minima", minima},
                 {"image", int_list_json(image)},
                 {"gcd_out", to_string(iso.gcd_out)},
                 {"minimal_generators", int_list_json(mins)},
                 {"window_atoms", rat_list_json(atoms)}};
  return c;
}

std::optional<Certificate> check_antimatter_chain(const Presentation& pres, std::size_t n, std::size_t probe) {
  for (auto k : {FlagKind::DenominatorChainDivides, FlagKind::DenominatorsUnbounded, FlagKind::SpectrumEmpty,
                 FlagKind::NumeratorsBounded}) {
    if (!flag_usable(pres, k, n)) return std::nullopt;
  }
  if (pres.is_finite()) return std::nullopt;
  const auto base = pres.unscaled();
  const std::size_t len = base.effective_window(n);
  const auto w = base.window(len);
  const BigInt bound = *pres.find(FlagKind::NumeratorsBounded)->bound;
  if (probe < 1 || probe >= len) throw InsufficientWindow("probe index must lie inside the window", probe + 2);
  if (!bound.fits_ulong_p()) return std::nullopt;

  const BigInt& b0 = w[probe - 1].den();
  const BigInt b2 = bound * bound;
  std::size_t n1 = 0;
  for (std::size_t i = probe + 1; i <= len; ++i) {
    if (w[i - 1].den() / b0 > b2) {
      n1 = i;
      break;
    }
  }
  if (n1 == 0) throw InsufficientWindow("no index with b_n1 / b_N0 > B^2 in the window", 2 * len);

  std::vector<std::uint64_t> nums;
  for (const auto& r : w) nums.push_back(r.num().get_ui());
  auto picked = coprime_subset(nums, bound.get_ui(), n1 - 1);
  if (!picked) throw InsufficientWindow("window too short for a coprime numerator subset", 2 * len);
  const auto& idx = *picked;
  const std::size_t nk = idx.back();
  const BigInt& bk = w[nk - 1].den();

  std::vector<BigInt> sgens;
  for (std::size_t t = 0; t + 1 < idx.size(); ++t) {
    sgens.push_back(bk / w[idx[t] - 1].den() * w[idx[t] - 1].num());
  }
  sgens.push_back(w[nk - 1].num());
  NumericalSemigroup s(sgens);
  const BigInt f = frobenius(s);
  const BigInt target = bk / b0;
  if (!(f < target)) throw InsufficientWindow("Frobenius inequality fails on this window", 2 * len);
  auto mem = membership_ns(s, target);
  if (!mem.member) throw std::logic_error("target above the Frobenius number is not representable");

  // Map semigroup coefficients back onto the chosen stream indices.
  std::vector<BigInt> coeffs(idx.size(), 0);
  for (std::size_t g = 0; g < s.gens().size(); ++g) {
    auto pos = std::find(sgens.begin(), sgens.end(), s.gens()[g]) - sgens.begin();
    coeffs[static_cast<std::size_t>(pos)] += mem.coeffs[g];
  }
  std::vector<std::size_t> idx_json(idx.begin(), idx.end());
  std::vector<std::string> picked_nums;
  for (auto i : idx) picked_nums.push_back(to_string(w[i - 1].num()));

  Certificate c{CertKind::DivisorChainAntimatter, {}, {}, len, {}};
  c.used_declared_flags = used_flags(pres, {FlagKind::DenominatorChainDivides, FlagKind::DenominatorsUnbounded,
                                            FlagKind::SpectrumEmpty, FlagKind::NumeratorsBounded});
  c.witnesses = {{"probe", probe},
                 {"B", to_string(bound)},
                 {"B_squared", to_string(b2)},
                 {"n1", n1},
                 {"ratio_b_n1_over_b_probe", to_string(w[n1 - 1].den() / b0)},
                 {"coprime_indices", idx_json},
                 {"numerators", picked_nums},
                 {"semigroup", int_list_json(sgens)},
                 {"frobenius", to_string(f)},
                 {"target_b_nk_over_b_probe", to_string(target)},
                 {"coefficients", int_list_json(coeffs)},
                 {"proves", "1/" + to_string(b0) + " lies in M"}};
  return c;
}

ChainMembership membership_via_chain(const PosRat& q, const Presentation& pres, std::size_t n) {
  if (!pres.is_finite() && !(pres.scale() == PosRat(1))) {
    return membership_via_chain(q / pres.scale(), pres.unscaled(), n);
  }
  if (!check_antimatter_chain(pres, n)) throw DomainError("membership_via_chain needs the divisor-chain criterion");
  const auto w = pres.window(n);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (mpz_divisible_p(w[i].den().get_mpz_t(), q.den().get_mpz_t())) {
      return {ChainAnswer::Yes, i + 1, q.num() * (w[i].den() / q.den()),
              "d(q) divides b_" + std::to_string(i + 1)};
    }
  }
  if (const auto* over = pres.find(FlagKind::OverPrimes)) {
    if (auto fac = factor(q.den())) {
      for (auto [p, e] : *fac) {
        if (!std::binary_search(over->primes.begin(), over->primes.end(), p)) {
          return {ChainAnswer::No, std::nullopt, 0, std::to_string(p) + " divides d(q) but no b_n"};
        }
      }
    }
  }
  throw InsufficientWindow("window ended before any b_n was divisible by d(q)", 2 * w.size());
}

std::optional<Certificate> check_simultaneous_valuations(const Presentation& pres,
                                                         const std::vector<std::uint64_t>& primes,
                                                         std::size_t n) {
  if (pres.is_finite() || primes.empty()) return std::nullopt;
  if (!flag_usable(pres, FlagKind::OverPrimes, n)) return std::nullopt;
  const auto base = pres.unscaled();
  const Family* fam = base.family();
  if (!fam->denominator_valuations_increase()) return std::nullopt;
  const auto w = base.window(n);
  for (const auto& r : w) {
    if (r.num() != w.front().num()) return std::nullopt;
  }
  std::vector<std::vector<std::int64_t>> vals;
  for (const auto& r : w) vals.push_back(den_valuations(r, primes));
  std::vector<std::size_t> chain;
  if (longest_increasing_chain(vals, chain) < 3) return std::nullopt;
  json idx = json::array(), vj = json::array();
  for (auto c : chain) {
    idx.push_back(c + 1);
    vj.push_back(vals[c]);
  }
  Certificate c{CertKind::SimultaneousValuations, used_flags(pres, {FlagKind::OverPrimes}),
                {"denominator_valuations_increase"}, w.size(), {}};
  c.witnesses = {{"P", primes}, {"numerator", to_string(w.front().num())}, {"chain_indices", idx},
                 {"denominator_valuations", vj}};
  return c;
}

// ---------------------------------------------------------------------------

json SupportPart::to_json() const {
  json ch = json::array();
  for (const auto& c : children) ch.push_back(c.to_json());
  std::vector<std::size_t> sup(support.begin(), support.end());
  json j = {{"j", to_string(numerator)}, {"I", sup}, {"indices", indices}, {"status", status}};
  if (status == "rescaled") {
    j["mu"] = to_string(mu);
    j["children"] = ch;
  }
  return j;
}

namespace {

struct Item {
  std::size_t index;
  PosRat value;
};

std::vector<SupportPart> partition_items(const std::vector<Item>& items, const std::vector<std::uint64_t>& primes,
                                         bool finite, bool chain_fact, int depth) {
  std::map<std::pair<BigInt, std::vector<std::size_t>>, std::vector<const Item*>> groups;
  for (const auto& it : items) {
    auto sup = support(it.value.den(), primes);
    BigInt rest = it.value.den();
    for (auto p : primes) {
      BigInt pp(static_cast<unsigned long>(p));
      mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
    }
    if (rest != 1) throw DomainError("term " + it.value.str() + " is not over the given primes");
    groups[{it.value.num(), std::vector<std::size_t>(sup.begin(), sup.end())}].push_back(&it);
  }
  std::vector<SupportPart> out;
  for (auto& [key, members] : groups) {
    SupportPart part;
    part.numerator = key.first;
    part.support = std::set<std::size_t>(key.second.begin(), key.second.end());
    for (const auto* m : members) part.indices.push_back(m->index);
    if (part.support.empty()) {
      part.status = "integer";
    } else if (finite) {
      part.status = "finite";
    } else {
      std::vector<std::uint64_t> ip;
      for (auto i : part.support) ip.push_back(primes[i - 1]);
      std::vector<std::vector<std::int64_t>> vals;
      for (const auto* m : members) vals.push_back(den_valuations(m->value, ip));
      std::vector<std::size_t> chain;
      if (chain_fact && longest_increasing_chain(vals, chain) >= 3) {
        part.status = "antimatter_chain";
      } else if (depth > static_cast<int>(primes.size())) {
        part.status = "open";
      } else {
        std::int64_t threshold = 0;
        for (const auto& v : vals) threshold = std::max(threshold, *std::min_element(v.begin(), v.end()));
        part.mu = 1;
        for (auto p : ip) part.mu *= pow(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned long>(threshold));
        std::vector<Item> scaled;
        for (const auto* m : members) scaled.push_back({m->index, m->value * PosRat(part.mu)});
        part.status = "rescaled";
        part.children = partition_items(scaled, primes, false, false, depth + 1);
      }
    }
    out.push_back(std::move(part));
  }
  return out;
}

}  // namespace

std::vector<SupportPart> partition_by_support(const Presentation& pres, const std::vector<std::uint64_t>& primes,
                                              std::size_t n) {
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i]) || (i && primes[i] <= primes[i - 1])) {
      throw DomainError("P must be strictly increasing primes");
    }
  }
  const auto base = pres.is_finite() ? pres : pres.unscaled();
  const auto w = base.window(n);
  const auto* nb = pres.find(FlagKind::NumeratorsBounded);
  std::vector<Item> items;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (nb && w[i].num() > *nb->bound) {
      throw FlagRefutedError("numerators_bounded: n(r_" + std::to_string(i + 1) + ") exceeds B");
    }
    items.push_back({i + 1, w[i]});
  }
  const bool chain_fact = base.family() && base.family()->denominator_valuations_increase();
  return partition_items(items, primes, pres.is_finite(), chain_fact, 0);
}

BoundedSubset reduce_to_bounded_generating_subset(const std::vector<PosRat>& r, const std::vector<PosRat>& b,
                                                  std::uint64_t capacity) {
  if (r.empty() || b.empty()) throw DomainError("generator lists must be nonempty");
  for (const auto& x : r) {
    if (member_in_window(x, b, capacity).verdict != MemberVerdict::Yes) {
      throw DomainError("R is not inside <B> on the window: " + x.str());
    }
  }
  const PosRat rmin = *std::min_element(r.begin(), r.end());
  for (const auto& x : b) {
    if (x < rmin) continue;
    if (member_in_window(x, r, capacity).verdict != MemberVerdict::Yes) {
      throw DomainError("B is not inside <R> on the window: " + x.str());
    }
  }
  std::vector<PosRat> all = r;
  all.insert(all.end(), b.begin(), b.end());
  std::set<std::size_t> chosen;
  for (const auto& x : b) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i] > x) continue;
      auto rest = *checked_sub(x, r[i]);
      if (rest.is_zero() || member_in_window(rest, all, capacity).verdict == MemberVerdict::Yes) chosen.insert(i);
    }
  }
  BoundedSubset out;
  out.max_numerator = 0;
  for (auto i : chosen) {
    out.indices.push_back(i + 1);
    out.subset.push_back(r[i]);
    if (r[i].num() > out.max_numerator) out.max_numerator = r[i].num();
    if (out.max_value < r[i]) out.max_value = r[i];
  }
  for (const auto& x : r) {
    if (member_in_window(x, out.subset, capacity).verdict != MemberVerdict::Yes) {
      throw DomainError("the divisor subset does not regenerate " + x.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

AtomsSummary summary_from(const std::vector<WindowAtom>& wa, AtomsSummary::Kind kind, std::string pattern = {}) {
  AtomsSummary s;
  s.kind = kind;
  s.pattern = std::move(pattern);
  for (const auto& a : wa) {
    if (a.status.kind == AtomStatus::Kind::Atom) s.atoms.push_back(a.term);
  }
  return s;
}

bool all_of_kind(const std::vector<WindowAtom>& wa, AtomStatus::Kind k) {
  return std::all_of(wa.begin(), wa.end(), [k](const WindowAtom& a) { return a.status.kind == k; });
}

json atom_evidence(const std::vector<WindowAtom>& wa) {
  json j = json::array();
  for (const auto& a : wa) {
    json e = {{"index", a.index}, {"term", a.term.str()}, {"status", atom_kind_name(a.status.kind)}};
    if (a.status.kind == AtomStatus::Kind::Atom) e["certificate"] = a.status.certificate;
    if (a.status.kind == AtomStatus::Kind::NotAtom) e["witness"] = a.status.witness.to_json();
    j.push_back(e);
  }
  return j;
}

json split_witnesses(const Family& fam, std::size_t len, bool& ok) {
  json j = json::array();
  ok = true;
  for (std::size_t i = 1; i <= len; ++i) {
    auto f = fam.split(i);
    if (!f || f->parts() < 2 || !(f->value([&](std::size_t k) { return fam.term(k); }) == fam.term(i))) {
      ok = false;
      return j;
    }
    j.push_back({{"index", i}, {"split", f->to_json()}});
  }
  return j;
}

ClassificationResult classify_base(const Presentation& pres, std::size_t n, const ClassifyOptions& opts) {
  check_flag_consistency(pres, n);
  ClassificationResult res;
  const std::size_t len = pres.effective_window(n);
  res.window = len;
  if (len < n && !pres.is_finite()) res.notes["window_clamped_from"] = n;
  AtomOptions aopts{opts.dp_capacity};

  if (pres.is_finite()) {
    const auto& terms = pres.stream().terms;
    auto iso = normalize_to_numerical(terms);
    auto mins = minimal_generators(iso.target);
    res.verdict = Verdict::Atomic;
    res.atoms.kind = AtomsSummary::Kind::Finite;
    for (const auto& g : mins) res.atoms.atoms.push_back(PosRat(g) / iso.factor);
    Certificate c{CertKind::FinitelyGenerated, {}, {}, terms.size(), {}};
    c.witnesses = {{"factor", iso.factor.str()},
                   {"gcd_out", to_string(iso.gcd_out)},
                   {"target", int_list_json(iso.target.gens())},
                   {"minimal_generators", int_list_json(mins)},
                   {"frobenius", to_string(frobenius(NumericalSemigroup(mins)))}};
    res.certificate = c;
    res.window_atoms = atoms_in_window(pres, terms.size(), aopts);
    return res;
  }

  const Family& fam = *pres.family();

  if (pres.has(FlagKind::DenominatorsBounded)) {
    auto c = check_bounded_denominators(pres, len);
    res.verdict = Verdict::Atomic;
    res.certificate = c;
    res.atoms.kind = AtomsSummary::Kind::Unknown;
    for (const auto& a : c->witnesses.at("window_atoms")) res.atoms.atoms.push_back(PosRat::parse(a.get<std::string>()));
    return res;
  }

  if (pres.has(FlagKind::InfimumPositive)) {
    const auto* f = pres.find(FlagKind::InfimumPositive);
    Certificate c{CertKind::ZeroNotLimitPoint, {*f}, {}, len, {}};
    c.witnesses = {{"lower_bound", f->lower_bound->str()},
                   {"window_minimum", [&] {
                      auto w = pres.window(len);
                      return std::min_element(w.begin(), w.end())->str();
                    }()}};
    res.verdict = Verdict::Atomic;
    res.certificate = c;
    res.window_atoms = atoms_in_window(pres, len, aopts);
    res.atoms = summary_from(res.window_atoms,
                             fam.terms_are_atoms() ? AtomsSummary::Kind::InfiniteWithPattern : AtomsSummary::Kind::Unknown,
                             fam.atom_pattern());
    return res;
  }

  try {
    if (auto c = check_antimatter_chain(pres, len, opts.probe)) {
      res.verdict = Verdict::Antimatter;
      res.certificate = c;
      res.atoms.kind = AtomsSummary::Kind::Empty;
      res.window_atoms = atoms_in_window(pres, len, aopts);
      return res;
    }
  } catch (const InsufficientWindow& e) {
    res.notes["divisor_chain"] = {{"insufficient_window", e.what()}, {"suggested_window", e.suggested_window}};
  }

  res.window_atoms = atoms_in_window(pres, len, aopts);
  const auto& wa = res.window_atoms;
  const bool any_atom = std::any_of(wa.begin(), wa.end(), [](const WindowAtom& a) {
    return a.status.kind == AtomStatus::Kind::Atom;
  });
  const bool undecided = std::any_of(wa.begin(), wa.end(), [](const WindowAtom& a) {
    return a.status.kind == AtomStatus::Kind::UnknownAtWindow;
  });

  const auto* nb = pres.find(FlagKind::NumeratorsBounded);
  const auto* over = pres.find(FlagKind::OverPrimes);
  if (nb && over && !over->primes.empty()) {
    auto parts = partition_by_support(pres, over->primes, len);
    json tree = json::array();
    for (const auto& p : parts) tree.push_back(p.to_json());
    Certificate c{CertKind::StronglyBoundedFinitePrimes, used_flags(pres, {FlagKind::NumeratorsBounded, FlagKind::OverPrimes}),
                  {}, len, {}};
    c.witnesses = {{"P", over->primes}, {"partition", tree}, {"window_atoms", atom_evidence(wa)}};
    if (fam.denominator_valuations_increase()) c.family_facts.push_back("denominator_valuations_increase");
    if (any_atom && flag_usable(pres, FlagKind::DenominatorsUnbounded, len)) {
      c.used_declared_flags.push_back(*pres.find(FlagKind::DenominatorsUnbounded));
      c.witnesses["conclusion"] = "finitely many atoms; not finitely generated, hence not atomic";
      res.verdict = Verdict::NonAtomicWithAtoms;
      res.certificate = c;
      res.atoms = summary_from(wa, undecided ? AtomsSummary::Kind::Unknown : AtomsSummary::Kind::Finite);
      return res;
    }
    const bool all_chain = !parts.empty() && std::all_of(parts.begin(), parts.end(), [](const SupportPart& p) {
      return p.status == "antimatter_chain";
    });
    if (all_chain) {
      c.witnesses["conclusion"] = "every part is antimatter, so A(M) is empty";
      res.verdict = Verdict::Antimatter;
      res.certificate = c;
      res.atoms.kind = AtomsSummary::Kind::Empty;
      return res;
    }
    res.notes["strongly_bounded_finite_primes"] = c.to_json();
  }

  if (fam.terms_are_atoms() && all_of_kind(wa, AtomStatus::Kind::Atom)) {
    Certificate c{CertKind::GeneratedByAtoms, {}, {"terms_are_atoms"}, len, {}};
    c.witnesses = {{"window_atoms", atom_evidence(wa)}};
    res.verdict = Verdict::Atomic;
    res.certificate = c;
    res.atoms = summary_from(wa, AtomsSummary::Kind::InfiniteWithPattern, fam.atom_pattern());
    return res;
  }

  if (fam.all_terms_split()) {
    bool ok = false;
    json splits = split_witnesses(fam, len, ok);
    if (ok) {
      Certificate c{CertKind::GeneratorsSplit, {}, {"all_terms_split"}, len, {}};
      c.witnesses = {{"splits", splits}};
      if (auto extra = fam.notes(len); !extra.empty()) c.witnesses["notes"] = extra;
      res.verdict = Verdict::Antimatter;
      res.certificate = c;
      res.atoms.kind = AtomsSummary::Kind::Empty;
      return res;
    }
  }

  if (auto p = fam.negative_valuation_split_prime(); p && any_atom) {
    std::optional<std::size_t> witness;
    bool ok = true;
    for (const auto& a : wa) {
      if (pval(*p, a.term) < ExtInt(0)) {
        if (a.status.kind != AtomStatus::Kind::NotAtom) ok = false;
        if (!witness) witness = a.index;
      }
    }
    if (ok && witness) {
      Certificate c{CertKind::ValuationSeparation, {}, {"negative_valuation_terms_split"}, len, {}};
      c.witnesses = {{"p", *p},
                     {"outside_atoms", pres.term(*witness).str()},
                     {"outside_index", *witness},
                     {"nu_p_outside", pval(*p, pres.term(*witness)).value()},
                     {"window_atoms", atom_evidence(wa)}};
      res.verdict = Verdict::NonAtomicWithAtoms;
      res.certificate = c;
      res.atoms = summary_from(wa, fam.atom_pattern().empty() ? AtomsSummary::Kind::Unknown
                                                              : AtomsSummary::Kind::InfiniteWithPattern,
                               fam.atom_pattern());
      return res;
    }
  }

  res.verdict = Verdict::Unknown;
  res.atoms = summary_from(wa, AtomsSummary::Kind::Unknown);
  return res;
}

}  // namespace

ClassificationResult classify(const Presentation& pres, std::size_t n, const ClassifyOptions& opts) {
  if (pres.is_finite() || pres.scale() == PosRat(1)) return classify_base(pres, n, opts);
  const PosRat& c = pres.scale();
  auto res = classify_base(pres.unscaled(), n, opts);
  for (auto& a : res.atoms.atoms) a = a * c;
  for (auto& a : res.window_atoms) a.term = a.term * c;
  if (res.certificate) res.certificate->witnesses["isomorphism"] = "x -> " + c.str() + " x";
  res.notes["scale"] = c.str();
  return res;
}

// ---------------------------------------------------------------------------

namespace {

bool flags_present(const Certificate& cert, const Presentation& pres) {
  for (const auto& f : cert.used_declared_flags) {
    if (std::find(pres.flags().begin(), pres.flags().end(), f) == pres.flags().end()) return false;
  }
  return true;
}

bool verify_chain(const Certificate& cert, const Presentation& pres) {
  const auto& wj = cert.witnesses;
  const auto w = pres.unscaled().window(cert.window);
  const auto probe = wj.at("probe").get<std::size_t>();
  const BigInt bound = parse_bigint(wj.at("B").get<std::string>());
  if (bound != *pres.find(FlagKind::NumeratorsBounded)->bound) return false;
  const auto idx = wj.at("coprime_indices").get<std::vector<std::size_t>>();
  if (idx.empty() || idx.front() <= probe || idx.back() > w.size()) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (!mpz_divisible_p(w[i].den().get_mpz_t(), w[i - 1].den().get_mpz_t())) return false;
  }
  BigInt g = 0;
  for (auto i : idx) g = gcd(g, w[i - 1].num());
  if (g != 1 || idx.size() > bound.get_ui() + 1) return false;
  const BigInt& b0 = w[probe - 1].den();
  if (!(bound * bound < w[idx.front() - 1].den() / b0)) return false;
  const BigInt& bk = w[idx.back() - 1].den();
  std::vector<BigInt> sgens;
  for (std::size_t t = 0; t + 1 < idx.size(); ++t) sgens.push_back(bk / w[idx[t] - 1].den() * w[idx[t] - 1].num());
  sgens.push_back(w[idx.back() - 1].num());
  if (frobenius(NumericalSemigroup(sgens)) >= bk / b0) return false;
  const auto coeffs = wj.at("coefficients");
  if (coeffs.size() != idx.size()) return false;
  PosRat sum;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    BigInt c = parse_bigint(coeffs[t].get<std::string>());
    if (c < 0) return false;
    sum += PosRat(c) * w[idx[t] - 1];
  }
  return sum == PosRat::normalize(1, b0);
}

bool verify_window_atoms(const json& ev, const Presentation& pres, std::size_t window, bool require_all_atoms) {
  const auto base = pres.is_finite() ? pres : pres.unscaled();
  for (const auto& e : ev) {
    const auto i = e.at("index").get<std::size_t>();
    const PosRat q = base.term(i);
    const auto status = atom_status(q, base, window);
    if (atom_kind_name(status.kind) != e.at("status").get<std::string>()) return false;
    if (!verify_atom_status(q, base, status)) return false;
    if (require_all_atoms && status.kind != AtomStatus::Kind::Atom) return false;
  }
  return true;
}

}  // namespace

bool verify(const Certificate& cert, const Presentation& pres) {
  if (!flags_present(cert, pres)) return false;
  try {
    switch (cert.kind) {
      case CertKind::FinitelyGenerated: {
        if (!pres.is_finite()) return false;
        auto iso = normalize_to_numerical(pres.stream().terms);
        auto mins = minimal_generators(iso.target);
        for (const auto& r : pres.stream().terms) {
          if (!(r * iso.factor).is_integer()) return false;
        }
        return int_list_json(mins) == cert.witnesses.at("minimal_generators") &&
               to_string(frobenius(NumericalSemigroup(mins))) == cert.witnesses.at("frobenius").get<std::string>();
      }
      case CertKind::BoundedDenominators: {
        const BigInt m = parse_bigint(cert.witnesses.at("m").get<std::string>());
        const auto base = pres.is_finite() ? pres : pres.unscaled();
        for (const auto& r : base.window(cert.window)) {
          if (!(r * PosRat(m)).is_integer()) return false;
        }
        auto again = check_bounded_denominators(pres, cert.window);
        return again && again->witnesses == cert.witnesses;
      }
      case CertKind::ZeroNotLimitPoint: {
        const auto* f = pres.find(FlagKind::InfimumPositive);
        if (!f) return false;
        const auto base = pres.unscaled();
        for (const auto& r : base.window(cert.window)) {
          if (r < *f->lower_bound) return false;
        }
        return true;
      }
      case CertKind::DivisorChainAntimatter:
        return verify_chain(cert, pres);
      case CertKind::SimultaneousValuations: {
        const auto base = pres.unscaled();
        if (!base.family() || !base.family()->denominator_valuations_increase()) return false;
        const auto primes = cert.witnesses.at("P").get<std::vector<std::uint64_t>>();
        const auto idx = cert.witnesses.at("chain_indices").get<std::vector<std::size_t>>();
        if (idx.size() < 3) return false;
        std::vector<std::int64_t> prev;
        for (auto i : idx) {
          auto v = den_valuations(base.term(i), primes);
          if (!prev.empty()) {
            for (std::size_t k = 0; k < v.size(); ++k) {
              if (!(prev[k] < v[k])) return false;
            }
          }
          prev = v;
        }
        return true;
      }
      case CertKind::StronglyBoundedFinitePrimes: {
        const auto primes = cert.witnesses.at("P").get<std::vector<std::uint64_t>>();
        json tree = json::array();
        for (const auto& p : partition_by_support(pres, primes, cert.window)) tree.push_back(p.to_json());
        if (tree != cert.witnesses.at("partition")) return false;
        std::set<std::size_t> covered;
        for (const auto& p : tree) {
          for (auto i : p.at("indices")) covered.insert(i.get<std::size_t>());
        }
        if (covered.size() != pres.effective_window(cert.window)) return false;
        return verify_window_atoms(cert.witnesses.at("window_atoms"), pres, cert.window, false);
      }
      case CertKind::GeneratedByAtoms:
        return pres.unscaled().family()->terms_are_atoms() &&
               verify_window_atoms(cert.witnesses.at("window_atoms"), pres, cert.window, true);
      case CertKind::GeneratorsSplit: {
        const auto base = pres.unscaled();
        for (const auto& s : cert.witnesses.at("splits")) {
          Factorization f;
          for (auto it = s.at("split").begin(); it != s.at("split").end(); ++it) {
            f.coeffs[std::stoul(it.key())] = parse_bigint(it.value().get<std::string>());
          }
          const auto i = s.at("index").get<std::size_t>();
          if (f.parts() < 2 || !(f.value([&](std::size_t k) { return base.term(k); }) == base.term(i))) return false;
        }
        return cert.witnesses.at("splits").size() == cert.window;
      }
      case CertKind::ValuationSeparation: {
        const auto base = pres.unscaled();
        const auto p = cert.witnesses.at("p").get<std::uint64_t>();
        const auto i = cert.witnesses.at("outside_index").get<std::size_t>();
        if (!(pval(p, base.term(i)) < ExtInt(0))) return false;
        if (base.family()->negative_valuation_split_prime() != p) return false;
        return verify_window_atoms(cert.witnesses.at("window_atoms"), pres, cert.window, false);
      }
      case CertKind::ChainMembership:
      case CertKind::BoundedGeneratingSubset:
        return false;
    }
  } catch (const std::exception&) {
    return false;
  }
  return false;
}

}  // namespace puiseux
