#include "puiseux/numsgp.hpp"

#include <algorithm>
#include <numeric>

#include "puiseux/errors.hpp"
#include "puiseux/kernels.hpp"

namespace puiseux {

NumericalSemigroup::NumericalSemigroup(std::vector<BigInt> gens) : gens_(std::move(gens)) {
  if (gens_.empty()) throw DomainError("numerical semigroup needs a generator");
  std::sort(gens_.begin(), gens_.end());
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
  if (gens_.front() <= 0) throw DomainError("generators must be positive");
  BigInt g = 0;
  for (const auto& a : gens_) g = gcd(g, a);
  if (g != 1) throw DomainError("generators must have gcd 1");
}

NumericalSemigroup NumericalSemigroup::of(std::initializer_list<long> gens) {
  std::vector<BigInt> v;
  for (long a : gens) v.emplace_back(a);
  return NumericalSemigroup(std::move(v));
}

std::string NumericalSemigroup::str() const {
  std::string out = "<";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ", ";
    out += to_string(gens_[i]);
  }
  return out + ">";
}

ScaledIso normalize_to_numerical(std::span<const PosRat> gens) {
  if (gens.empty()) throw DomainError("empty generator list");
  BigInt l = 1;
  for (const auto& r : gens) {
    if (r.is_zero()) throw DomainError("zero generator");
    l = lcm(l, r.den());
  }
  std::vector<BigInt> ints;
  BigInt g = 0;
  for (const auto& r : gens) {
    ints.push_back(r.num() * (l / r.den()));
    g = gcd(g, ints.back());
  }
  for (auto& v : ints) v /= g;
  return ScaledIso{PosRat::normalize(l, g), g, NumericalSemigroup(std::move(ints))};
}

namespace {

std::size_t small_multiplicity(const NumericalSemigroup& s) {
  const BigInt& a1 = s.multiplicity();
  if (a1 > kAperyLimit) throw DomainError("multiplicity too large for Apery arithmetic");
  return static_cast<std::size_t>(a1.get_ui());
}

// Round-robin shortest paths over residues mod a1, skipping `skip`.
std::vector<std::optional<BigInt>> apery_partial(const NumericalSemigroup& s, std::size_t skip) {
  const std::size_t a1 = small_multiplicity(s);
  std::vector<std::optional<BigInt>> w(a1);
  w[0] = BigInt(0);
  const auto& gens = s.gens();
  for (std::size_t gi = 1; gi < gens.size(); ++gi) {
    if (gi == skip) continue;
    const BigInt& g = gens[gi];
    const std::size_t step = mpz_fdiv_ui(g.get_mpz_t(), a1);
    const std::size_t d = std::gcd(step, a1);
    for (std::size_t r = 0; r < d; ++r) {
      std::optional<std::size_t> start;
      for (std::size_t q = r; q < a1; q += d) {
        if (w[q] && (!start || *w[q] < *w[*start])) start = q;
      }
      if (!start) continue;
      std::size_t q = *start;
      for (std::size_t it = 0; it < a1 / d; ++it) {
        std::size_t next = (q + step) % a1;
        BigInt cand = *w[q] + g;
        if (!w[next] || cand < *w[next]) w[next] = cand;
        q = next;
      }
    }
  }
  return w;
}

}  // namespace

std::vector<BigInt> apery_set(const NumericalSemigroup& s) {
  auto partial = apery_partial(s, SIZE_MAX);
  std::vector<BigInt> out;
  out.reserve(partial.size());
  for (auto& v : partial) out.push_back(*v);
  return out;
}

std::vector<BigInt> minimal_generators(const NumericalSemigroup& s) {
  const auto& gens = s.gens();
  std::vector<BigInt> out{gens.front()};
  const std::size_t a1 = small_multiplicity(s);
  for (std::size_t i = 1; i < gens.size(); ++i) {
    auto w = apery_partial(s, i);
    const auto& entry = w[mpz_fdiv_ui(gens[i].get_mpz_t(), a1)];
    if (!entry || *entry > gens[i]) out.push_back(gens[i]);
  }
  return out;
}

namespace {

bool all_fit_u32(const std::vector<BigInt>& gens) {
  return std::all_of(gens.begin(), gens.end(), [](const BigInt& g) { return g <= UINT32_MAX; });
}

Membership membership_dp(const NumericalSemigroup& s, std::size_t x) {
  std::vector<std::uint32_t> g32;
  for (const auto& g : s.gens()) g32.push_back(static_cast<std::uint32_t>(g.get_ui()));
  std::vector<std::uint8_t> reach(x + 1);
  kernels::reach_table(g32, reach);
  Membership m;
  m.member = reach[x] != 0;
  if (!m.member) return m;
  m.coeffs.assign(g32.size(), 0);
  while (x > 0) {
    for (std::size_t i = 0; i < g32.size(); ++i) {
      if (g32[i] <= x && reach[x - g32[i]]) {
        m.coeffs[i] += 1;
        x -= g32[i];
        break;
      }
    }
  }
  return m;
}

Membership membership_apery(const NumericalSemigroup& s, const BigInt& x) {
  const std::size_t a1 = small_multiplicity(s);
  auto w = apery_set(s);
  std::size_t r = mpz_fdiv_ui(x.get_mpz_t(), a1);
  Membership m;
  m.member = x >= w[r];
  if (!m.member) return m;
  const auto& gens = s.gens();
  m.coeffs.assign(gens.size(), 0);
  m.coeffs[0] = (x - w[r]) / gens[0];
  while (r != 0) {
    for (std::size_t i = 1; i < gens.size(); ++i) {
      std::size_t step = mpz_fdiv_ui(gens[i].get_mpz_t(), a1);
      std::size_t prev = (r + a1 - step) % a1;
      if (w[prev] + gens[i] == w[r]) {
        m.coeffs[i] += 1;
        r = prev;
        break;
      }
    }
  }
  return m;
}

}  // namespace

Membership membership_ns(const NumericalSemigroup& s, const BigInt& x, std::uint64_t dp_capacity) {
  if (x < 0) throw DomainError("membership of a negative integer");
  if (x <= dp_capacity && all_fit_u32(s.gens())) {
    return membership_dp(s, static_cast<std::size_t>(x.get_ui()));
  }
  return membership_apery(s, x);
}

BigInt frobenius(const NumericalSemigroup& s) {
  if (s.multiplicity() == 1) return -1;
  auto w = apery_set(s);
  return *std::max_element(w.begin(), w.end()) - s.multiplicity();
}

BigInt frobenius_by_table(const NumericalSemigroup& s) {
  auto mins = minimal_generators(s);
  BigInt bound = (mins.front() - 1) * (mins.back() - 1);
  if (bound > 100'000'000) throw DomainError("table too large");
  if (!all_fit_u32(mins)) throw DomainError("generators too large for the table");
  std::vector<std::uint32_t> g32;
  for (const auto& g : mins) g32.push_back(static_cast<std::uint32_t>(g.get_ui()));
  std::vector<std::uint8_t> reach(bound.get_ui() + 1);
  kernels::reach_table(g32, reach);
  return BigInt(static_cast<long>(kernels::last_zero(reach)));
}

FrobeniusBound frobenius_bound_holds(const NumericalSemigroup& s) {
  auto mins = minimal_generators(s);
  FrobeniusBound out;
  out.frobenius = frobenius(s);
  out.bound = (mins.front() - 1) * (mins.back() - 1);
  out.holds = out.frobenius < out.bound;
  return out;
}

}  // namespace puiseux
