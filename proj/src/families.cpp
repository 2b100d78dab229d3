#include <algorithm>
#include <numeric>

#include "puiseux/errors.hpp"
#include "puiseux/presentation.hpp"

namespace puiseux {

std::optional<std::int64_t> Family::tail_pval_floor(std::uint64_t, std::size_t) const {
  return std::nullopt;
}

namespace {

using Flags = std::vector<StructuralFlag>;

StructuralFlag chain() { return StructuralFlag::simple(FlagKind::DenominatorChainDivides); }
StructuralFlag unbounded() { return StructuralFlag::simple(FlagKind::DenominatorsUnbounded); }
StructuralFlag spectrum_empty() { return StructuralFlag::simple(FlagKind::SpectrumEmpty); }

BigInt ui(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

std::int64_t int_param(const json& params, const char* key, std::optional<std::int64_t> fallback = {}) {
  if (!params.contains(key)) {
    if (fallback) return *fallback;
    throw DomainError(std::string("missing parameter ") + key);
  }
  const auto& v = params.at(key);
  if (!v.is_number_integer()) throw DomainError(std::string("parameter ") + key + " must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t prime_param(const json& params, const char* key, std::optional<std::int64_t> fallback = {}) {
  auto v = int_param(params, key, fallback);
  if (v < 2 || !is_prime(static_cast<std::uint64_t>(v))) {
    throw DomainError(std::string("parameter ") + key + " must be prime");
  }
  return static_cast<std::uint64_t>(v);
}

void reject_unknown(const json& params, std::initializer_list<const char*> allowed) {
  if (!params.is_object()) throw DomainError("params must be an object");
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; })) {
      throw DomainError("unknown parameter " + it.key());
    }
  }
}

Factorization single(std::size_t index, BigInt count) {
  Factorization f;
  f.coeffs[index] = std::move(count);
  return f;
}

// 1/p^n, or 1/b^n over Spec(b).
class PowerReciprocals : public Family {
 public:
  PowerReciprocals(std::string name, std::uint64_t base) : name_(std::move(name)), base_(base) {
    for (auto p : prime_spectrum(base)) primes_.push_back(p);
  }
  std::string name() const override { return name_; }
  json params() const override { return {{name_ == "one_over_powers" ? "b" : "p", base_}}; }
  PosRat term(std::size_t n) const override {
    return PosRat::normalize(1, pow(ui(base_), static_cast<unsigned long>(n)));
  }
  Flags proven_flags() const override {
    return {chain(), unbounded(), StructuralFlag::numerators_bounded(1), spectrum_empty(),
            StructuralFlag::over_primes(primes_)};
  }
  std::size_t window_cap() const override { return 5000; }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t) const override {
    if (std::find(primes_.begin(), primes_.end(), p) != primes_.end()) return std::nullopt;
    return 0;
  }
  bool all_terms_split() const override { return true; }
  std::optional<std::uint64_t> negative_valuation_split_prime() const override { return primes_.front(); }
  std::optional<Factorization> split(std::size_t n) const override { return single(n + 1, ui(base_)); }
  bool denominator_valuations_increase() const override { return true; }

 private:
  std::string name_;
  std::uint64_t base_;
  std::vector<std::uint64_t> primes_;
};

// Shared tail floor for streams whose n-th prime denominator q_n grows: once
// the window has passed p, later terms carry no p.
std::int64_t prime_tail_floor(std::uint64_t p, std::uint64_t last_window_prime) {
  return p <= last_window_prime ? 0 : -1;
}

class PrimeReciprocals : public Family {
 public:
  std::string name() const override { return "prime_reciprocals"; }
  json params() const override { return json::object(); }
  PosRat term(std::size_t n) const override { return PosRat::normalize(1, ui(nth_prime(n))); }
  Flags proven_flags() const override {
    return {StructuralFlag::numerators_bounded(1), unbounded(), spectrum_empty()};
  }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t N) const override {
    return prime_tail_floor(p, N == 0 ? 1 : nth_prime(N));
  }
  bool terms_are_atoms() const override { return true; }
  std::string atom_pattern() const override { return "1/p for every prime p"; }
};

// 1/2^k at odd positions 2k-1, 1/p_k (k-th odd prime) at even positions 2k.
class DyadicPlusOddPrimes : public Family {
 public:
  std::string name() const override { return "dyadic_plus_odd_prime_reciprocals"; }
  json params() const override { return json::object(); }
  PosRat term(std::size_t n) const override {
    const std::size_t k = (n + 1) / 2;
    if (n % 2 == 1) return PosRat::normalize(1, pow(BigInt(2), static_cast<unsigned long>(k)));
    return PosRat::normalize(1, ui(nth_odd_prime(k)));
  }
  Flags proven_flags() const override {
    return {StructuralFlag::numerators_bounded(1), unbounded(), spectrum_empty()};
  }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t N) const override {
    if (p == 2) return std::nullopt;
    const std::size_t odd_seen = N / 2;
    return prime_tail_floor(p, odd_seen == 0 ? 2 : nth_odd_prime(odd_seen));
  }
  std::optional<std::uint64_t> negative_valuation_split_prime() const override { return 2; }
  std::optional<Factorization> split(std::size_t n) const override {
    if (n % 2 == 0) return std::nullopt;
    return single(n + 2, 2);
  }
  std::string atom_pattern() const override { return "1/p for every odd prime p"; }
};

enum class PrimeSelector { All, Odd };

PrimeSelector selector_param(const json& params, PrimeSelector fallback) {
  if (!params.contains("P")) return fallback;
  const auto& v = params.at("P");
  if (v == "all_primes") return PrimeSelector::All;
  if (v == "odd_primes") return PrimeSelector::Odd;
  throw DomainError("P must be \"all_primes\" or \"odd_primes\"");
}

std::uint64_t select_prime(PrimeSelector s, std::size_t k) {
  return s == PrimeSelector::All ? nth_prime(k) : nth_odd_prime(k);
}

class PrimorialReciprocals : public Family {
 public:
  explicit PrimorialReciprocals(PrimeSelector s) : sel_(s) {}
  std::string name() const override { return "primorial_reciprocals"; }
  json params() const override { return {{"P", sel_ == PrimeSelector::All ? "all_primes" : "odd_primes"}}; }
  PosRat term(std::size_t n) const override {
    BigInt d = 1;
    for (std::size_t i = 1; i <= n; ++i) d *= ui(select_prime(sel_, i));
    return PosRat::normalize(1, d);
  }
  Flags proven_flags() const override {
    return {chain(), unbounded(), StructuralFlag::numerators_bounded(1), spectrum_empty()};
  }
  std::size_t window_cap() const override { return 5000; }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t, std::size_t) const override {
    return std::nullopt;
  }
  bool all_terms_split() const override { return true; }
  std::optional<Factorization> split(std::size_t n) const override {
    return single(n + 1, ui(select_prime(sel_, n + 1)));
  }

 private:
  PrimeSelector sel_;
};

// r_n = p_1...p_n / 2^(k_n) over odd primes, k_1 = 1, k_(n+1) the least
// k > k_n with 2^k p_1...p_n > 2^(k_n + 1) p_1...p_(n+1).
class IncreasingPrimorialOverTwoPowers : public Family {
 public:
  std::string name() const override { return "increasing_primorial_over_two_powers"; }
  json params() const override { return json::object(); }
  PosRat term(std::size_t n) const override {
    BigInt num = 1;
    unsigned long k = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      num *= ui(nth_odd_prime(i));
      if (i == n) break;
      // 2^(k' - k - 1) > p_(i+1)
      const std::uint64_t next = nth_odd_prime(i + 1);
      unsigned long t = 0;
      while ((BigInt(1) << t) <= ui(next)) ++t;
      k = k + 1 + t;
    }
    return PosRat::normalize(num, BigInt(1) << k);
  }
  Flags proven_flags() const override {
    return {StructuralFlag::over_primes({2}), chain(), unbounded()};
  }
  std::size_t window_cap() const override { return 2000; }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t N) const override {
    if (p == 2) return std::nullopt;
    // Terms past N carry p_1 ... p_(N+1) in the numerator.
    for (std::size_t i = 1; i <= N + 1; ++i) {
      if (nth_odd_prime(i) == p) return 1;
    }
    return 0;
  }
  std::vector<std::uint64_t> obstruction_primes(std::size_t n) const override {
    return {nth_odd_prime(n + 1)};
  }
  bool terms_are_atoms() const override { return true; }
  std::string atom_pattern() const override { return "every r_n"; }
};

class TwoPowerTimesPrimeReciprocals : public Family {
 public:
  std::string name() const override { return "two_power_times_prime_reciprocals"; }
  json params() const override { return json::object(); }
  PosRat term(std::size_t n) const override {
    return PosRat::normalize(1, (BigInt(1) << static_cast<unsigned long>(n)) * ui(nth_odd_prime(n)));
  }
  Flags proven_flags() const override {
    return {StructuralFlag::numerators_bounded(1), unbounded(), spectrum_empty()};
  }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t N) const override {
    if (p == 2) return std::nullopt;
    return prime_tail_floor(p, N == 0 ? 2 : nth_odd_prime(N));
  }
  bool terms_are_atoms() const override { return true; }
  std::string atom_pattern() const override { return "1/(2^n p_n) for every n"; }
};

// a_n / p^n with a_(n+1) = p a_n + 1, the least admissible choice.
class NonstronglyBoundedAtomic : public Family {
 public:
  NonstronglyBoundedAtomic(std::uint64_t p, BigInt a1) : p_(p), a1_(std::move(a1)) {}
  std::string name() const override { return "nonstrongly_bounded_atomic"; }
  json params() const override { return {{"p", p_}, {"a1", a1_.get_si()}}; }
  PosRat term(std::size_t n) const override {
    BigInt a = a1_;
    for (std::size_t i = 1; i < n; ++i) a = a * ui(p_) + 1;
    return PosRat::normalize(a, pow(ui(p_), static_cast<unsigned long>(n)));
  }
  Flags proven_flags() const override {
    return {StructuralFlag::infimum_positive(PosRat::normalize(a1_, ui(p_))),
            StructuralFlag::simple(FlagKind::EventuallyIncreasing), StructuralFlag::over_primes({p_}),
            unbounded(), chain()};
  }
  std::size_t window_cap() const override { return 5000; }
  std::optional<PosRat> tail_lower_bound(std::size_t N) const override {
    return N == 0 ? term(1) : term(N);
  }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t) const override {
    if (p == p_) return std::nullopt;
    return 0;
  }
  bool terms_are_atoms() const override { return true; }
  std::string atom_pattern() const override { return "a_n/p^n for every n"; }

 private:
  std::uint64_t p_;
  BigInt a1_;
};

// S side: 2/p^(2^n). T side: (p^(2^n) - 1)/p^(2^(n+1)) at 2n-1 and
// (p^(2^n) + 1)/p^(2^(n+1)) at 2n.
class STPair : public Family {
 public:
  STPair(std::uint64_t p, bool t_side) : p_(p), t_side_(t_side) {}
  std::string name() const override { return "s_t_pair"; }
  json params() const override { return {{"p", p_}, {"side", t_side_ ? "T" : "S"}}; }
  PosRat term(std::size_t n) const override {
    if (!t_side_) return PosRat::normalize(2, p_pow2(n));
    const std::size_t k = (n + 1) / 2;
    BigInt num = p_pow2(k);
    num += (n % 2 == 1) ? -1 : 1;
    return PosRat::normalize(num, p_pow2(k + 1));
  }
  Flags proven_flags() const override {
    Flags f{chain(), unbounded(), StructuralFlag::over_primes({p_})};
    if (!t_side_) f.insert(f.begin(), StructuralFlag::numerators_bounded(2));
    return f;
  }
  std::size_t window_cap() const override { return t_side_ ? 16 : 10; }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t) const override {
    if (p == p_) return std::nullopt;
    return 0;
  }
  bool all_terms_split() const override { return true; }
  std::optional<std::uint64_t> negative_valuation_split_prime() const override { return p_; }
  std::optional<Factorization> split(std::size_t n) const override {
    if (!t_side_) return single(n + 1, p_pow2(n));
    const std::size_t k = (n + 1) / 2;
    BigInt c = p_pow2(k);
    c += (n % 2 == 1) ? -1 : 1;
    c /= 2;
    Factorization f;
    f.coeffs[2 * k + 1] = c;
    f.coeffs[2 * k + 2] = c;
    return f;
  }
  bool denominator_valuations_increase() const override { return !t_side_; }

 private:
  BigInt p_pow2(std::size_t n) const { return pow(ui(p_), 1ul << n); }
  std::uint64_t p_;
  bool t_side_;
};

// Diagonal enumeration of (i, n), n >= 1: i = 0 is 1/2^n, i >= 1 is
// (q_i^2 + 1)/q_i + 1/2^n for the i-th prime q_i of P.
class AntimatterUnbounded : public Family {
 public:
  AntimatterUnbounded(PrimeSelector sel, std::vector<std::uint64_t> explicit_primes)
      : sel_(sel), primes_(std::move(explicit_primes)) {}
  std::string name() const override { return "antimatter_unbounded"; }
  json params() const override {
    if (!primes_.empty()) return {{"P", primes_}};
    return {{"P", sel_ == PrimeSelector::All ? "all_primes" : "odd_primes"}};
  }
  PosRat term(std::size_t n) const override {
    auto [i, k] = position(n);
    PosRat t = PosRat::normalize(1, BigInt(1) << static_cast<unsigned long>(k));
    if (i == 0) return t;
    const BigInt q = ui(prime(i));
    return PosRat::normalize(q * q + 1, q) + t;
  }
  Flags proven_flags() const override {
    Flags f{unbounded()};
    if (!primes_.empty()) {
      std::vector<std::uint64_t> p{2};
      p.insert(p.end(), primes_.begin(), primes_.end());
      std::sort(p.begin(), p.end());
      f.push_back(StructuralFlag::over_primes(p));
    }
    return f;
  }
  std::size_t window_cap() const override { return 5000; }
  bool all_terms_split() const override { return true; }
  std::optional<std::uint64_t> negative_valuation_split_prime() const override { return 2; }
  std::optional<Factorization> split(std::size_t n) const override {
    auto [i, k] = position(n);
    if (i == 0) return single(index_of(0, k + 1), 2);
    Factorization f;
    f.coeffs[index_of(i, k + 1)] = 1;
    f.coeffs[index_of(0, k + 1)] = 1;
    return f;
  }
  json notes(std::size_t window) const override {
    std::size_t largest = 0;
    for (std::size_t n = 1; n <= window; ++n) largest = std::max(largest, position(n).first);
    if (largest == 0 || (!primes_.empty() && largest > primes_.size())) return json::object();
    const BigInt q = ui(prime(largest));
    const BigInt num = 2 * q * q + q + 2;
    json j;
    j["unboundedness_witness"] = {
        {"q", prime(largest)},
        {"element", PosRat::normalize(num, 2 * q).str()},
        {"q_divides_numerator", mpz_divisible_p(num.get_mpz_t(), q.get_mpz_t()) != 0},
        {"claim", primes_.empty() ? "S_q lies outside <Y> for every bounded Y; P is infinite"
                                  : "P is finite; no unboundedness claim"}};
    return j;
  }

  std::pair<std::size_t, std::size_t> position(std::size_t n) const {
    std::size_t d = 1;
    while (n > d) {
      n -= d;
      ++d;
    }
    // Diagonal d lists (0, d), (1, d-1), ..., (d-1, 1).
    return {n - 1, d - (n - 1)};
  }
  static std::size_t index_of(std::size_t i, std::size_t k) {
    const std::size_t d = i + k;
    return (d - 1) * d / 2 + i + 1;
  }

 private:
  std::uint64_t prime(std::size_t i) const {
    if (!primes_.empty()) {
      if (i > primes_.size()) throw DomainError("prime list exhausted");
      return primes_[i - 1];
    }
    return select_prime(sel_, i);
  }
  PrimeSelector sel_;
  std::vector<std::uint64_t> primes_;
};

// m, ..., 2m-1 followed by q/p^(m+k).
class ExactlyMAtoms : public Family {
 public:
  ExactlyMAtoms(std::int64_t m, std::uint64_t p, std::uint64_t q) : m_(m), p_(p), q_(q) {}
  std::string name() const override { return "exactly_m_atoms"; }
  json params() const override { return {{"m", m_}, {"p", p_}, {"q", q_}}; }
  PosRat term(std::size_t n) const override {
    const auto m = static_cast<std::size_t>(m_);
    if (n <= m) return PosRat(static_cast<long long>(m + n - 1));
    return PosRat::normalize(ui(q_), pow(ui(p_), static_cast<unsigned long>(n)));
  }
  Flags proven_flags() const override {
    return {StructuralFlag::numerators_bounded(std::max<BigInt>(2 * m_ - 1, ui(q_))),
            StructuralFlag::over_primes({p_}), unbounded(), chain()};
  }
  std::size_t window_cap() const override { return 5000; }
  std::optional<std::int64_t> tail_pval_floor(std::uint64_t r, std::size_t N) const override {
    if (r == p_) return std::nullopt;
    std::int64_t floor = r == q_ ? 1 : 0;
    for (std::size_t n = N + 1; n <= static_cast<std::size_t>(m_); ++n) {
      floor = std::min(floor, valuation(BigInt(static_cast<long>(m_ + n - 1)), r));
    }
    return floor;
  }
  std::optional<std::uint64_t> negative_valuation_split_prime() const override { return p_; }
  std::optional<Factorization> split(std::size_t n) const override {
    if (n <= static_cast<std::size_t>(m_)) return std::nullopt;
    return single(n + 1, ui(p_));
  }
  bool denominator_valuations_increase() const override { return true; }
  std::string atom_pattern() const override {
    return "{" + std::to_string(m_) + ", ..., " + std::to_string(2 * m_ - 1) + "}";
  }

 private:
  std::int64_t m_;
  std::uint64_t p_;
  std::uint64_t q_;
};

}  // namespace

std::vector<std::string> family_names() {
  return {"one_over_prime_powers",
          "one_over_powers",
          "prime_reciprocals",
          "dyadic_plus_odd_prime_reciprocals",
          "primorial_reciprocals",
          "increasing_primorial_over_two_powers",
          "two_power_times_prime_reciprocals",
          "nonstrongly_bounded_atomic",
          "s_t_pair",
          "antimatter_unbounded",
          "exactly_m_atoms"};
}

std::shared_ptr<const Family> make_family_stream(const std::string& name, const json& params) {
  if (name == "one_over_prime_powers") {
    reject_unknown(params, {"p"});
    return std::make_shared<PowerReciprocals>(name, prime_param(params, "p", 2));
  }
  if (name == "one_over_powers") {
    reject_unknown(params, {"b"});
    auto b = int_param(params, "b", 6);
    if (b < 2) throw DomainError("b must be at least 2");
    return std::make_shared<PowerReciprocals>(name, static_cast<std::uint64_t>(b));
  }
  if (name == "prime_reciprocals") {
    reject_unknown(params, {});
    return std::make_shared<PrimeReciprocals>();
  }
  if (name == "dyadic_plus_odd_prime_reciprocals") {
    reject_unknown(params, {});
    return std::make_shared<DyadicPlusOddPrimes>();
  }
  if (name == "primorial_reciprocals") {
    reject_unknown(params, {"P"});
    return std::make_shared<PrimorialReciprocals>(selector_param(params, PrimeSelector::All));
  }
  if (name == "increasing_primorial_over_two_powers") {
    reject_unknown(params, {});
    return std::make_shared<IncreasingPrimorialOverTwoPowers>();
  }
  if (name == "two_power_times_prime_reciprocals") {
    reject_unknown(params, {});
    return std::make_shared<TwoPowerTimesPrimeReciprocals>();
  }
  if (name == "nonstrongly_bounded_atomic") {
    reject_unknown(params, {"p", "a1"});
    const auto p = prime_param(params, "p", 2);
    std::int64_t least = static_cast<std::int64_t>(p) + 1;
    while (std::gcd(least, static_cast<std::int64_t>(p)) != 1) ++least;
    const auto a1 = int_param(params, "a1", least);
    if (a1 <= static_cast<std::int64_t>(p)) throw DomainError("a1 must exceed p");
    if (std::gcd(a1, static_cast<std::int64_t>(p)) != 1) throw DomainError("a1 must be coprime to p");
    return std::make_shared<NonstronglyBoundedAtomic>(p, BigInt(static_cast<long>(a1)));
  }
  if (name == "s_t_pair") {
    reject_unknown(params, {"p", "side"});
    const auto p = prime_param(params, "p", 3);
    if (p == 2) throw DomainError("p must be an odd prime");
    std::string side = params.contains("side") ? params.at("side").get<std::string>() : "S";
    if (side != "S" && side != "T") throw DomainError("side must be \"S\" or \"T\"");
    return std::make_shared<STPair>(p, side == "T");
  }
  if (name == "antimatter_unbounded") {
    reject_unknown(params, {"P"});
    if (params.contains("P") && params.at("P").is_array()) {
      std::vector<std::uint64_t> primes;
      for (const auto& v : params.at("P")) {
        if (!v.is_number_integer()) throw DomainError("P entries must be integers");
        auto q = v.get<std::int64_t>();
        if (q < 3 || !is_prime(static_cast<std::uint64_t>(q))) throw DomainError("P must contain odd primes");
        primes.push_back(static_cast<std::uint64_t>(q));
      }
      if (primes.empty()) throw DomainError("P must be nonempty");
      if (!std::is_sorted(primes.begin(), primes.end()) ||
          std::adjacent_find(primes.begin(), primes.end()) != primes.end()) {
        throw DomainError("P must be strictly increasing");
      }
      return std::make_shared<AntimatterUnbounded>(PrimeSelector::Odd, primes);
    }
    auto sel = selector_param(params, PrimeSelector::Odd);
    if (sel != PrimeSelector::Odd) throw DomainError("P must consist of odd primes");
    return std::make_shared<AntimatterUnbounded>(sel, std::vector<std::uint64_t>{});
  }
  if (name == "exactly_m_atoms") {
    reject_unknown(params, {"m", "p", "q"});
    const auto m = int_param(params, "m", 2);
    if (m < 1) throw DomainError("m must be positive");
    const auto p = prime_param(params, "p", 3);
    const auto q = prime_param(params, "q", 5);
    if (static_cast<std::int64_t>(q) <= m) throw DomainError("q must exceed m");
    if (p == q) throw DomainError("p and q must differ");
    return std::make_shared<ExactlyMAtoms>(m, p, q);
  }
  throw DomainError("unknown family " + name);
}

}  // namespace puiseux
