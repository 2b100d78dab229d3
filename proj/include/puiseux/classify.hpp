#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "puiseux/factorize.hpp"
#include "puiseux/numsgp.hpp"
#include "puiseux/presentation.hpp"

namespace puiseux {

enum class Verdict { Atomic, Antimatter, NonAtomicWithAtoms, Unknown };
const char* verdict_name(Verdict v);

enum class CertKind {
  FinitelyGenerated,
  BoundedDenominators,
  ZeroNotLimitPoint,
  DivisorChainAntimatter,
  ChainMembership,
  SimultaneousValuations,
  StronglyBoundedFinitePrimes,
  BoundedGeneratingSubset,
  GeneratedByAtoms,
  GeneratorsSplit,
  ValuationSeparation,
};
const char* cert_name(CertKind k);

struct Certificate {
  CertKind kind;
  std::vector<StructuralFlag> used_declared_flags;
  std::vector<std::string> family_facts;
  std::size_t window = 0;
  json witnesses = json::object();

  /// True when the conclusion rests on declared flags or family facts.
  bool conditional() const;
  json to_json() const;
};

struct AtomsSummary {
  enum class Kind { Finite, InfiniteWithPattern, Empty, Unknown };
  Kind kind = Kind::Unknown;
  std::vector<PosRat> atoms;
  std::string pattern;
  json to_json() const;
};

struct ClassificationResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<Certificate> certificate;
  AtomsSummary atoms;
  std::vector<WindowAtom> window_atoms;
  std::size_t window = 0;
  json notes = json::object();
  json to_json(const Presentation& pres) const;
};

struct ClassifyOptions {
  std::size_t probe = 1;
  std::uint64_t dp_capacity = kDefaultDpCapacity;
};

/// Flag conflicts throw FlagConflictError; window refutations throw
/// FlagRefutedError.
ClassificationResult classify(const Presentation& pres, std::size_t n, const ClassifyOptions& opts = {});

void check_flag_consistency(const Presentation& pres, std::size_t n);

std::optional<Certificate> check_bounded_denominators(const Presentation& pres, std::size_t n);

/// Throws InsufficientWindow when the window cannot realize the inequalities.
std::optional<Certificate> check_antimatter_chain(const Presentation& pres, std::size_t n, std::size_t probe = 1);

enum class ChainAnswer { Yes, No };
struct ChainMembership {
  ChainAnswer answer;
  std::optional<std::size_t> index;  // stream index n with d(q) | b_n
  BigInt multiplier;                 // q = multiplier / b_n
  std::string reason;
};
/// Requires a divisor-chain antimatter certificate for pres. Throws
/// InsufficientWindow when the window ends before a decision.
ChainMembership membership_via_chain(const PosRat& q, const Presentation& pres, std::size_t n = 50);

std::optional<Certificate> check_simultaneous_valuations(const Presentation& pres,
                                                         const std::vector<std::uint64_t>& primes,
                                                         std::size_t n);

struct SupportPart {
  BigInt numerator;
  std::set<std::size_t> support;
  std::vector<std::size_t> indices;  // stream indices
  /// "integer", "finite", "antimatter_chain", "rescaled", "open"
  std::string status;
  BigInt mu = 1;
  std::vector<SupportPart> children;
  json to_json() const;
};

/// Throws FlagRefutedError when a window numerator exceeds the declared B.
std::vector<SupportPart> partition_by_support(const Presentation& pres, const std::vector<std::uint64_t>& primes,
                                              std::size_t n);

struct BoundedSubset {
  std::vector<std::size_t> indices;  // positions in R, 1-based
  std::vector<PosRat> subset;
  BigInt max_numerator;
  PosRat max_value;
};
/// Throws DomainError when the mutual generation check fails.
BoundedSubset reduce_to_bounded_generating_subset(const std::vector<PosRat>& r, const std::vector<PosRat>& b,
                                                  std::uint64_t capacity = kDefaultDpCapacity);

/// Re-checks every witness from raw window data.
bool verify(const Certificate& cert, const Presentation& pres);

}  // namespace puiseux
