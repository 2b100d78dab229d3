#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "puiseux/ratcore.hpp"

namespace puiseux {

/// Submonoid of N_0 given by sorted, distinct, coprime positive generators.
class NumericalSemigroup {
 public:
  /// Sorts and deduplicates. Throws DomainError on an empty list, a
  /// non-positive entry, or gcd != 1.
  explicit NumericalSemigroup(std::vector<BigInt> gens);
  static NumericalSemigroup of(std::initializer_list<long> gens);

  const std::vector<BigInt>& gens() const { return gens_; }
  const BigInt& multiplicity() const { return gens_.front(); }
  std::string str() const;

  friend bool operator==(const NumericalSemigroup&, const NumericalSemigroup&) = default;

 private:
  std::vector<BigInt> gens_;
};

struct ScaledIso {
  PosRat factor;
  BigInt gcd_out;
  NumericalSemigroup target;
};

/// x -> factor * x maps <gens> onto target, with factor = lcm(d) / gcd_out.
ScaledIso normalize_to_numerical(std::span<const PosRat> gens);

/// Minimal elements of the Apery set of N with respect to its multiplicity:
/// apery[r] is the least element congruent to r. The multiplicity must fit
/// below `kAperyLimit`.
inline constexpr std::uint64_t kAperyLimit = 1ull << 26;
std::vector<BigInt> apery_set(const NumericalSemigroup& s);

std::vector<BigInt> minimal_generators(const NumericalSemigroup& s);

/// Coefficients aligned with s.gens().
struct Membership {
  bool member = false;
  std::vector<BigInt> coeffs;
};

/// DP over 0..x for x up to `dp_capacity`, Apery arithmetic above it.
/// Witnesses prefer the earliest generator at every backtrack step.
Membership membership_ns(const NumericalSemigroup& s, const BigInt& x,
                         std::uint64_t dp_capacity = 10'000'000);

/// F(N), or -1 when N = N_0.
BigInt frobenius(const NumericalSemigroup& s);
/// F(N) read off the reachability table up to (a1-1)(an-1).
BigInt frobenius_by_table(const NumericalSemigroup& s);

struct FrobeniusBound {
  BigInt frobenius;
  BigInt bound;
  bool holds = false;
};
FrobeniusBound frobenius_bound_holds(const NumericalSemigroup& s);

}  // namespace puiseux
