#include "puiseux/factorize.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "puiseux/errors.hpp"
#include "puiseux/kernels.hpp"
#include "puiseux/numsgp.hpp"

namespace puiseux {

const char* member_verdict_name(MemberVerdict v) {
  switch (v) {
    case MemberVerdict::Yes: return "yes";
    case MemberVerdict::No: return "no";
    case MemberVerdict::CapacityExceeded: return "capacity_exceeded";
  }
  return "?";
}

const char* atom_kind_name(AtomStatus::Kind k) {
  switch (k) {
    case AtomStatus::Kind::Atom: return "atom";
    case AtomStatus::Kind::NotAtom: return "not_atom";
    case AtomStatus::Kind::UnknownAtWindow: return "unknown_at_window";
  }
  return "?";
}

namespace {

MemberResult decided(MemberVerdict v, std::string method, Factorization f = {}) {
  return {v, std::move(f), std::move(method)};
}

}  // namespace

MemberResult member_in_window(const PosRat& q, std::span<const PosRat> gens, std::uint64_t capacity) {
  if (q.is_zero()) return decided(MemberVerdict::Yes, "zero");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) throw DomainError("generators must be positive");
    if (gens[i] <= q) idx.push_back(i);
  }
  if (idx.empty()) return decided(MemberVerdict::No, "denominator");

  BigInt l = 1;
  for (auto i : idx) l = lcm(l, gens[i].den());
  if (!mpz_divisible_p(l.get_mpz_t(), q.den().get_mpz_t())) return decided(MemberVerdict::No, "denominator");

  BigInt t = q.num() * (l / q.den());
  std::vector<BigInt> g;
  BigInt common = 0;
  for (auto i : idx) {
    g.push_back(gens[i].num() * (l / gens[i].den()));
    common = gcd(common, g.back());
  }
  if (!mpz_divisible_p(t.get_mpz_t(), common.get_mpz_t())) return decided(MemberVerdict::No, "gcd");
  t /= common;
  for (auto& v : g) v /= common;

  auto finish = [&](Factorization f, const char* method) {
    Factorization mapped;
    for (auto& [local, c] : f.coeffs) mapped.coeffs[idx[local] + 1] += c;
    PosRat sum = mapped.value([&](std::size_t i) { return gens[i - 1]; });
    if (!(sum == q)) throw std::logic_error("membership witness does not re-sum");
    return decided(MemberVerdict::Yes, method, std::move(mapped));
  };

  for (std::size_t i = 0; i < g.size(); ++i) {
    if (mpz_divisible_p(t.get_mpz_t(), g[i].get_mpz_t())) {
      Factorization f;
      f.coeffs[i] = t / g[i];
      return finish(std::move(f), "multiple");
    }
  }
  // Two-generator Diophantine test: t = x g_i + y g_j with x, y >= 0.
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      BigInt d = gcd(g[i], g[j]);
      if (!mpz_divisible_p(t.get_mpz_t(), d.get_mpz_t())) continue;
      BigInt gi = g[i] / d, gj = g[j] / d, td = t / d;
      BigInt x = 0;
      if (gj != 1) {
        BigInt inv;
        mpz_invert(inv.get_mpz_t(), gi.get_mpz_t(), gj.get_mpz_t());
        x = td * inv;
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), gj.get_mpz_t());
      }
      if (x * gi > td) continue;
      BigInt y = (td - x * gi) / gj;
      Factorization f;
      if (x > 0) f.coeffs[i] = x;
      if (y > 0) f.coeffs[j] = y;
      return finish(std::move(f), "pair");
    }
  }

  if (t <= capacity) {
    const std::size_t x = t.get_ui();
    std::vector<std::uint32_t> g32;
    for (const auto& v : g) g32.push_back(static_cast<std::uint32_t>(v.get_ui()));
    std::vector<std::uint8_t> reach(x + 1);
    kernels::reach_table(g32, reach);
    if (!reach[x]) return decided(MemberVerdict::No, "dp");
    Factorization f;
    std::size_t rest = x;
    while (rest > 0) {
      for (std::size_t i = 0; i < g32.size(); ++i) {
        if (g32[i] <= rest && reach[rest - g32[i]]) {
          f.coeffs[i] += 1;
          rest -= g32[i];
          break;
        }
      }
    }
    return finish(std::move(f), "dp");
  }

  const BigInt gmin = *std::min_element(g.begin(), g.end());
  if (gmin <= capacity && gmin <= kAperyLimit) {
    NumericalSemigroup s(g);
    auto m = membership_ns(s, t, 0);
    if (!m.member) return decided(MemberVerdict::No, "apery");
    Factorization f;
    for (std::size_t k = 0; k < s.gens().size(); ++k) {
      if (m.coeffs[k] == 0) continue;
      auto pos = std::find(g.begin(), g.end(), s.gens()[k]) - g.begin();
      f.coeffs[static_cast<std::size_t>(pos)] += m.coeffs[k];
    }
    return finish(std::move(f), "apery");
  }
  return decided(MemberVerdict::CapacityExceeded, "capacity");
}

// ---------------------------------------------------------------------------

namespace {

using Kind = AtomStatus::Kind;

AtomStatus atom(std::string cert, std::size_t window, json evidence) {
  AtomStatus s;
  s.kind = Kind::Atom;
  s.certificate = std::move(cert);
  s.window = window;
  s.evidence = std::move(evidence);
  return s;
}

AtomStatus not_atom(Factorization f, std::size_t window, std::string how) {
  AtomStatus s;
  s.kind = Kind::NotAtom;
  s.witness = std::move(f);
  s.window = window;
  s.certificate = std::move(how);
  return s;
}

std::optional<std::size_t> term_index(const std::vector<PosRat>& w, const PosRat& q) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == q) return i + 1;
  }
  return std::nullopt;
}

void add_primes(std::set<std::uint64_t>& out, const BigInt& n) {
  if (n <= 1) return;
  if (auto f = factor(n)) {
    for (auto [p, e] : *f) out.insert(p);
  }
}

struct Obstruction {
  std::uint64_t p = 0;
  std::int64_t vq = 0;
  std::int64_t floor = 0;
  std::vector<std::size_t> head;
};

// Lower bound for nu_p over the terms below q that lie past the window;
// nullopt when unbounded below. `tail_irrelevant` means no such terms.
std::optional<std::int64_t> tail_floor(const Family* fam, std::uint64_t p, std::size_t n, bool tail_irrelevant) {
  if (tail_irrelevant) return INT64_MAX;
  if (!fam) return INT64_MAX;
  return fam->tail_pval_floor(p, n);
}

// Sums of `head` generators strictly below q; nullopt past `limit` or when
// q itself is such a sum.
std::optional<std::set<PosRat>> sums_below(const std::vector<PosRat>& head, const PosRat& q, std::size_t limit) {
  std::set<PosRat> seen{PosRat(0)};
  std::vector<PosRat> frontier{PosRat(0)};
  while (!frontier.empty()) {
    std::vector<PosRat> next;
    for (const auto& x : frontier) {
      for (const auto& h : head) {
        PosRat y = x + h;
        if (y == q) return std::nullopt;
        if (!(y < q)) continue;
        if (seen.insert(y).second) {
          if (seen.size() > limit) return std::nullopt;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

bool head_obstructs(const PosRat& q, const std::vector<PosRat>& head, std::uint64_t p, std::int64_t floor,
                    std::size_t limit) {
  auto sums = sums_below(head, q, limit);
  if (!sums) return false;
  for (const auto& x : *sums) {
    PosRat diff = *checked_sub(q, x);
    if (!(pval(p, diff) < ExtInt(floor))) return false;
  }
  return true;
}

AtomStatus atom_status_base(const PosRat& q, const Presentation& pres, std::size_t n, const AtomOptions& opts) {
  if (q.is_zero()) throw DomainError("zero is not a non-unit");
  const Family* fam = pres.family();
  const std::size_t len = pres.effective_window(n);
  const auto w = pres.window(len);

  std::vector<std::size_t> below;  // 1-based stream indices of terms < q
  std::vector<PosRat> below_vals;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < q) {
      below.push_back(i + 1);
      below_vals.push_back(w[i]);
    }
  }

  auto member = member_in_window(q, below_vals, opts.dp_capacity);
  if (member.verdict == MemberVerdict::Yes) {
    Factorization f;
    for (auto& [local, c] : member.witness.coeffs) f.coeffs[below[local - 1]] += c;
    return not_atom(std::move(f), len, "window factorization (" + member.method + ")");
  }
  const auto self = term_index(w, q);
  if (fam && self) {
    if (auto f = fam->split(*self)) {
      PosRat sum = f->value([&](std::size_t i) { return pres.term(i); });
      if (sum == q && f->parts() >= 2) return not_atom(std::move(*f), len, "family split rule");
    }
  }

  const bool exhausted = member.verdict == MemberVerdict::No;
  if (!fam) {
    if (exhausted) {
      return atom("minimality: q is not a sum of smaller generators", len, {{"kind", "finite_minimality"}});
    }
    AtomStatus s;
    s.window = len;
    return s;
  }

  if (self) {
    if (const auto* inf = pres.find(FlagKind::InfimumPositive); inf && *inf->lower_bound == q) {
      return atom("q is the minimum of M•", len, {{"kind", "infimum_minimum"}, {"lower_bound", q.str()}});
    }
  }

  const auto tail = fam->tail_lower_bound(len);
  const bool tail_irrelevant = tail && !(*tail < q);
  if (tail_irrelevant && exhausted) {
    return atom("exhaustive window search; every later term is at least " + tail->str(), len,
                {{"kind", "tail_bound"}, {"tail_lower_bound", tail->str()}});
  }

  std::set<std::uint64_t> primes;
  add_primes(primes, q.num());
  add_primes(primes, q.den());
  for (const auto& v : below_vals) {
    add_primes(primes, v.num());
    add_primes(primes, v.den());
  }
  if (self) {
    for (auto p : fam->obstruction_primes(*self)) primes.insert(p);
  }

  for (auto p : primes) {
    auto floor = tail_floor(fam, p, len, tail_irrelevant);
    if (!floor) continue;
    const std::int64_t vq = pval(p, q).value();
    std::int64_t v0 = *floor;
    for (const auto& v : below_vals) v0 = std::min(v0, pval(p, v).value());
    if (vq < v0) {
      return atom("valuation obstruction at p=" + std::to_string(p), len,
                  {{"kind", "valuation"}, {"p", p}, {"nu_p_q", vq}, {"floor", v0}});
    }
  }
  for (auto p : primes) {
    auto floor = tail_floor(fam, p, len, tail_irrelevant);
    if (!floor || *floor == INT64_MAX) continue;
    std::vector<PosRat> head;
    std::vector<std::size_t> head_idx;
    for (std::size_t k = 0; k < below_vals.size(); ++k) {
      if (pval(p, below_vals[k]) < ExtInt(*floor)) {
        head.push_back(below_vals[k]);
        head_idx.push_back(below[k]);
      }
    }
    if (head.empty()) continue;
    if (head_obstructs(q, head, p, *floor, opts.head_limit)) {
      return atom(std::to_string(p) + "-adic valuation obstruction", len,
                  {{"kind", "valuation_head"}, {"p", p}, {"floor", *floor}, {"head", head_idx}});
    }
  }

  AtomStatus s;
  s.window = len;
  return s;
}

}  // namespace

AtomStatus atom_status(const PosRat& q, const Presentation& pres, std::size_t n, const AtomOptions& opts) {
  if (pres.is_finite() || pres.scale() == PosRat(1)) return atom_status_base(q, pres, n, opts);
  auto s = atom_status_base(q / pres.scale(), pres.unscaled(), n, opts);
  s.evidence["scale"] = pres.scale().str();
  return s;
}

std::vector<WindowAtom> atoms_in_window(const Presentation& pres, std::size_t n, const AtomOptions& opts) {
  std::vector<WindowAtom> out;
  const auto w = pres.window(n);
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back({i + 1, w[i], atom_status(w[i], pres, n, opts)});
  return out;
}

bool verify_atom_status(const PosRat& q, const Presentation& pres, const AtomStatus& status) {
  switch (status.kind) {
    case Kind::UnknownAtWindow:
      return true;
    case Kind::NotAtom: {
      if (status.witness.parts() < 2) return false;
      for (const auto& [i, c] : status.witness.coeffs) {
        if (c < 1 || i == 0 || i > pres.length()) return false;
      }
      return status.witness.value([&](std::size_t i) { return pres.term(i); }) == q;
    }
    case Kind::Atom: {
      const Presentation base = pres.is_finite() ? pres : pres.unscaled();
      const PosRat qb = pres.is_finite() ? q : q / pres.scale();
      const auto w = base.window(status.window);
      std::vector<PosRat> below;
      for (const auto& v : w) {
        if (v < qb) below.push_back(v);
      }
      const std::string kind = status.evidence.value("kind", "");
      const Family* fam = base.family();
      if (kind == "finite_minimality") {
        return base.is_finite() && member_in_window(qb, below).verdict == MemberVerdict::No;
      }
      if (kind == "infimum_minimum") {
        const auto* inf = base.find(FlagKind::InfimumPositive);
        return inf && *inf->lower_bound == qb && term_index(w, qb).has_value();
      }
      if (kind == "tail_bound") {
        auto tail = fam ? fam->tail_lower_bound(status.window) : std::nullopt;
        return tail && !(*tail < qb) && member_in_window(qb, below).verdict == MemberVerdict::No;
      }
      if (kind == "valuation" || kind == "valuation_head") {
        const auto p = status.evidence.at("p").get<std::uint64_t>();
        auto tail = fam ? fam->tail_lower_bound(status.window) : std::nullopt;
        const bool irrelevant = !fam || (tail && !(*tail < qb));
        auto floor = tail_floor(fam, p, status.window, irrelevant);
        if (!floor) return false;
        if (kind == "valuation") {
          std::int64_t v0 = *floor;
          for (const auto& v : below) v0 = std::min(v0, pval(p, v).value());
          return pval(p, qb) < ExtInt(v0);
        }
        std::vector<PosRat> head;
        for (const auto& v : below) {
          if (pval(p, v) < ExtInt(*floor)) head.push_back(v);
        }
        if (member_in_window(qb, below).verdict == MemberVerdict::Yes) return false;
        return head_obstructs(qb, head, p, *floor, SIZE_MAX);
      }
      return false;
    }
  }
  return false;
}

json to_json(const AtomStatus& s, const PosRat& q, const Presentation& pres) {
  json j = {{"element", q.str()}, {"status", atom_kind_name(s.kind)}, {"window", s.window}};
  if (s.kind == Kind::Atom) {
    j["certificate"] = s.certificate;
    j["evidence"] = s.evidence;
  } else if (s.kind == Kind::NotAtom) {
    j["witness"] = s.witness.str(q, [&](std::size_t i) { return pres.term(i); });
    j["via"] = s.certificate;
  }
  return j;
}

}  // namespace puiseux
