#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace puiseux {

using BigInt = mpz_class;

std::string to_string(const BigInt& v);
BigInt parse_bigint(std::string_view text);
BigInt pow(const BigInt& base, unsigned long exponent);
BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);
/// Exponent of `p` in `n`; `n` must be nonzero.
std::int64_t valuation(const BigInt& n, std::uint64_t p);
bool fits_int64(const BigInt& v);

/// Exact non-negative rational kept in lowest terms.
class PosRat {
 public:
  PosRat() : num_(0), den_(1) {}
  PosRat(long long integer);  // NOLINT: integers convert implicitly
  PosRat(const BigInt& integer);  // NOLINT

  /// Lowest-terms representative of num/den. Throws DomainError on den == 0
  /// or a negative input.
  static PosRat normalize(BigInt num, BigInt den);
  /// Accepts "a/b" or "a" with decimal digits.
  static PosRat parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  std::string str() const;

  friend PosRat operator+(const PosRat& a, const PosRat& b);
  friend PosRat operator*(const PosRat& a, const PosRat& b);
  /// Throws DomainError when b is zero.
  friend PosRat operator/(const PosRat& a, const PosRat& b);
  PosRat& operator+=(const PosRat& o) { return *this = *this + o; }

  /// a - b when a >= b.
  friend std::optional<PosRat> checked_sub(const PosRat& a, const PosRat& b);

  friend bool operator==(const PosRat& a, const PosRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const PosRat& a, const PosRat& b);

  friend std::ostream& operator<<(std::ostream& os, const PosRat& r) { return os << r.str(); }

 private:
  PosRat(BigInt num, BigInt den, int /*already reduced*/)
      : num_(std::move(num)), den_(std::move(den)) {}

  BigInt num_;
  BigInt den_;
};

/// Integer or +infinity; the codomain of a valuation.
class ExtInt {
 public:
  ExtInt(std::int64_t v) : value_(v) {}  // NOLINT
  static ExtInt infinity() { return ExtInt(); }

  bool is_infinite() const { return !value_.has_value(); }
  std::int64_t value() const;

  friend ExtInt operator+(const ExtInt& a, const ExtInt& b);
  friend bool operator==(const ExtInt& a, const ExtInt& b) = default;
  friend std::strong_ordering operator<=>(const ExtInt& a, const ExtInt& b);
  std::string str() const;

 private:
  ExtInt() = default;
  std::optional<std::int64_t> value_;
};

// Primes. All primality answers are deterministic.
bool is_prime(std::uint64_t n);
/// k-th prime, 1-based: nth_prime(1) == 2.
std::uint64_t nth_prime(std::size_t k);
/// k-th odd prime, 1-based: nth_odd_prime(1) == 3.
std::uint64_t nth_odd_prime(std::size_t k);
/// 1-based position of a prime in the sequence of all primes.
std::size_t prime_index(std::uint64_t p);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Prime factorization by trial division plus Pollard rho on a 64-bit
/// cofactor. Empty optional when a cofactor above 2^64 stays unresolved.
std::optional<std::vector<std::pair<std::uint64_t, std::int64_t>>> factor(const BigInt& n);

/// nu_p(r) with nu_p(0) = infinity. Throws DomainError when p is not prime.
ExtInt pval(std::uint64_t p, const PosRat& r);

/// Set of prime divisors of n; Spec(1) is empty. Throws DomainError on 0.
std::set<std::uint64_t> prime_spectrum(std::uint64_t n);

/// 1-based indices i with primes[i-1] | n. `primes` must be strictly
/// increasing primes.
std::set<std::size_t> support(const BigInt& n, std::span<const std::uint64_t> primes);

enum class SpectrumVerdict { EmptyOnWindow, StabilizesAt, Inconclusive };

struct SpectrumReport {
  std::size_t window_length = 0;
  std::set<std::uint64_t> stabilizers_on_window;
  std::set<std::uint64_t> divisor_primes;
  SpectrumVerdict verdict = SpectrumVerdict::EmptyOnWindow;
};

/// Window semi-decision for the spectrum of an integer sequence: p stabilizes
/// on the window iff p divides every term of the final half. With
/// `require_declaration`, a nonempty stabilizer set is reported as
/// Inconclusive.
SpectrumReport sequence_spectrum(std::span<const std::uint64_t> window, std::uint64_t bound,
                                 bool require_declaration = false);

/// Indices N < n1 < ... < nk (1-based) with gcd of the selected terms 1 and
/// k <= bound + 1. Empty optional when the window runs out first.
std::optional<std::vector<std::size_t>> coprime_subset(std::span<const std::uint64_t> window,
                                                       std::uint64_t bound, std::size_t after);

}  // namespace puiseux
