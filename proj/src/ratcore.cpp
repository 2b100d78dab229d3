#include "puiseux/ratcore.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

#include "puiseux/errors.hpp"

namespace puiseux {

std::string to_string(const BigInt& v) { return v.get_str(10); }

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) throw ParseError("empty integer");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ParseError("sign without digits");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw ParseError("invalid digit in integer '" + std::string(text) + "'", 0, {}, i);
    }
  }
  std::string digits(text.substr(start));
  BigInt v(digits, 10);
  return text[0] == '-' ? BigInt(-v) : v;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_gcd(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

std::int64_t valuation(const BigInt& n, std::uint64_t p) {
  if (n == 0) throw DomainError("valuation of zero");
  if (p < 2) throw DomainError("not a prime");
  BigInt rest;
  BigInt prime(static_cast<unsigned long>(p));
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

bool fits_int64(const BigInt& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

// ---------------------------------------------------------------------------
// PosRat

PosRat::PosRat(long long integer) : num_(static_cast<long>(integer)), den_(1) {
  if (integer < 0) throw DomainError("negative value");
}

PosRat::PosRat(const BigInt& integer) : num_(integer), den_(1) {
  if (integer < 0) throw DomainError("negative value");
}

PosRat PosRat::normalize(BigInt num, BigInt den) {
  if (den == 0) throw DomainError("zero denominator");
  if (num < 0 || den < 0) throw DomainError("negative value");
  if (num == 0) return PosRat(BigInt(0), BigInt(1), 0);
  BigInt g = gcd(num, den);
  if (g != 1) {
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), g.get_mpz_t());
  }
  return PosRat(std::move(num), std::move(den), 0);
}

PosRat PosRat::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto slash = text.find('/');
  BigInt num = parse_bigint(trim(text.substr(0, slash)));
  BigInt den = slash == std::string_view::npos ? BigInt(1) : parse_bigint(trim(text.substr(slash + 1)));
  return normalize(std::move(num), std::move(den));
}

std::string PosRat::str() const { return to_string(num_) + "/" + to_string(den_); }

PosRat operator+(const PosRat& a, const PosRat& b) {
  if (a.den_ == b.den_) return PosRat::normalize(a.num_ + b.num_, a.den_);
  return PosRat::normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

PosRat operator*(const PosRat& a, const PosRat& b) {
  return PosRat::normalize(a.num_ * b.num_, a.den_ * b.den_);
}

PosRat operator/(const PosRat& a, const PosRat& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return PosRat::normalize(a.num_ * b.den_, a.den_ * b.num_);
}

std::optional<PosRat> checked_sub(const PosRat& a, const PosRat& b) {
  BigInt n = a.num_ * b.den_ - b.num_ * a.den_;
  if (n < 0) return std::nullopt;
  return PosRat::normalize(std::move(n), a.den_ * b.den_);
}

std::strong_ordering operator<=>(const PosRat& a, const PosRat& b) {
  int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// ExtInt

std::int64_t ExtInt::value() const {
  if (!value_) throw DomainError("infinite valuation has no finite value");
  return *value_;
}

ExtInt operator+(const ExtInt& a, const ExtInt& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtInt::infinity();
  return ExtInt(*a.value_ + *b.value_);
}

std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b) {
  if (a.is_infinite() && b.is_infinite()) return std::strong_ordering::equal;
  if (a.is_infinite()) return std::strong_ordering::greater;
  if (b.is_infinite()) return std::strong_ordering::less;
  return *a.value_ <=> *b.value_;
}

std::string ExtInt::str() const { return value_ ? std::to_string(*value_) : "inf"; }

// ---------------------------------------------------------------------------
// Primes

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Sieve of the first primes, built once and read-only afterwards.
struct SmallPrimes {
  static constexpr u64 kLimit = 1u << 21;
  std::vector<u64> primes;
  std::vector<bool> composite;

  SmallPrimes() : composite(kLimit + 1, false) {
    composite[0] = composite[1] = true;
    for (u64 i = 2; i * i <= kLimit; ++i) {
      if (composite[i]) continue;
      for (u64 j = i * i; j <= kLimit; j += i) composite[j] = true;
    }
    for (u64 i = 2; i <= kLimit; ++i)
      if (!composite[i]) primes.push_back(i);
  }
};

const SmallPrimes& small_primes() {
  static const SmallPrimes table;
  return table;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_u64(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n <= SmallPrimes::kLimit) return !small_primes().composite[n];
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  // Deterministic for every 64-bit n with these bases.
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t nth_prime(std::size_t k) {
  if (k == 0) throw DomainError("prime index is 1-based");
  const auto& table = small_primes().primes;
  if (k <= table.size()) return table[k - 1];
  u64 p = table.back();
  for (std::size_t i = table.size(); i < k;) {
    p += 2;
    if (is_prime(p)) ++i;
  }
  return p;
}

std::uint64_t nth_odd_prime(std::size_t k) {
  if (k == 0) throw DomainError("prime index is 1-based");
  return nth_prime(k + 1);
}

std::size_t prime_index(std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("not a prime");
  const auto& table = small_primes().primes;
  if (p <= table.back()) {
    return static_cast<std::size_t>(std::lower_bound(table.begin(), table.end(), p) - table.begin()) + 1;
  }
  std::size_t index = table.size();
  for (u64 q = table.back() + 2; q <= p; q += 2)
    if (is_prime(q)) ++index;
  return index;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<u64> out;
  for (std::size_t k = 1;; ++k) {
    u64 p = nth_prime(k);
    if (p > n) break;
    out.push_back(p);
  }
  return out;
}

std::optional<std::vector<std::pair<std::uint64_t, std::int64_t>>> factor(const BigInt& n) {
  if (n <= 0) throw DomainError("factor expects a positive integer");
  std::vector<std::pair<u64, std::int64_t>> out;
  BigInt rest = n;
  constexpr u64 kTrial = 1u << 16;
  for (u64 p : small_primes().primes) {
    if (p > kTrial) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      BigInt prime(static_cast<unsigned long>(p));
      auto e = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), prime.get_mpz_t());
      out.emplace_back(p, static_cast<std::int64_t>(e));
    }
    if (rest == 1) break;
  }
  if (rest != 1) {
    if (mpz_sizeinbase(rest.get_mpz_t(), 2) > 64) return std::nullopt;
    u64 r = mpz_get_ui(rest.get_mpz_t());
    std::vector<u64> parts;
    factor_u64(r, parts);
    std::sort(parts.begin(), parts.end());
    for (u64 p : parts) {
      if (!out.empty() && out.back().first == p) {
        ++out.back().second;
      } else {
        out.emplace_back(p, 1);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExtInt pval(std::uint64_t p, const PosRat& r) {
  if (!is_prime(p)) throw DomainError("not a prime");
  if (r.is_zero()) return ExtInt::infinity();
  return ExtInt(valuation(r.num(), p) - valuation(r.den(), p));
}

std::set<std::uint64_t> prime_spectrum(std::uint64_t n) {
  if (n == 0) throw DomainError("spectrum of zero");
  std::set<u64> out;
  for (std::size_t k = 1; n > 1; ++k) {
    u64 p = nth_prime(k);
    if (p * p > n) {
      out.insert(n);
      break;
    }
    if (n % p == 0) {
      out.insert(p);
      while (n % p == 0) n /= p;
    }
  }
  return out;
}

std::set<std::size_t> support(const BigInt& n, std::span<const std::uint64_t> primes) {
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!is_prime(primes[i])) throw DomainError("support: not a prime");
    if (i > 0 && primes[i] <= primes[i - 1]) throw DomainError("support: primes must be strictly increasing");
  }
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < primes.size(); ++i)
    if (mpz_divisible_ui_p(n.get_mpz_t(), primes[i])) out.insert(i + 1);
  return out;
}

SpectrumReport sequence_spectrum(std::span<const std::uint64_t> window, std::uint64_t bound,
                                 bool require_declaration) {
  if (window.empty()) throw DomainError("empty window");
  SpectrumReport report;
  report.window_length = window.size();
  for (u64 a : window) {
    if (a == 0) throw DomainError("sequence terms must be positive");
    if (a > bound) throw DomainError("bound violated");
    auto primes = prime_spectrum(a);
    report.divisor_primes.insert(primes.begin(), primes.end());
  }
  auto tail = window.subspan(window.size() / 2);
  for (u64 p : report.divisor_primes) {
    if (std::all_of(tail.begin(), tail.end(), [p](u64 a) { return a % p == 0; }))
      report.stabilizers_on_window.insert(p);
  }
  if (report.stabilizers_on_window.empty()) {
    report.verdict = SpectrumVerdict::EmptyOnWindow;
  } else {
    report.verdict = require_declaration ? SpectrumVerdict::Inconclusive : SpectrumVerdict::StabilizesAt;
  }
  return report;
}

std::optional<std::vector<std::size_t>> coprime_subset(std::span<const std::uint64_t> window,
                                                       std::uint64_t bound, std::size_t after) {
  if (after >= window.size()) throw DomainError("window must extend beyond the start index");
  for (u64 a : window) {
    if (a == 0) throw DomainError("sequence terms must be positive");
    if (a > bound) throw DomainError("bound violated");
  }
  auto tail = window.subspan(after);
  if (std::all_of(tail.begin(), tail.end(), [](u64 a) { return a == 1; })) {
    if (tail.size() < 2) return std::nullopt;
    return std::vector<std::size_t>{after + 1, after + 2};
  }
  // Greedy gcd descent: keep an index iff it strictly lowers the running gcd.
  std::vector<std::size_t> chosen;
  u64 running = 0;
  for (std::size_t i = after; i < window.size() && running != 1; ++i) {
    u64 next = std::gcd(running, window[i]);
    if (running == 0 || next < running) {
      chosen.push_back(i + 1);
      running = next;
    }
  }
  if (running != 1) return std::nullopt;
  return chosen;
}

}  // namespace puiseux
