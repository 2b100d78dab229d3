#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "puiseux/presentation.hpp"

namespace puiseux {

inline constexpr std::uint64_t kDefaultDpCapacity = 10'000'000;

enum class MemberVerdict { Yes, No, CapacityExceeded };
const char* member_verdict_name(MemberVerdict v);

struct MemberResult {
  MemberVerdict verdict = MemberVerdict::No;
  /// Indices are 1-based positions in the generator list.
  Factorization witness;
  /// Which test decided: "zero", "denominator", "gcd", "multiple", "pair",
  /// "dp", "apery", "capacity".
  std::string method;
};

/// Membership of q in the monoid generated by the listed generators only.
/// No is definitive for the list. CapacityExceeded when the scaled target
/// exceeds `capacity` and no exact shortcut applies.
MemberResult member_in_window(const PosRat& q, std::span<const PosRat> gens,
                              std::uint64_t capacity = kDefaultDpCapacity);

struct AtomStatus {
  enum class Kind { Atom, NotAtom, UnknownAtWindow };
  Kind kind = Kind::UnknownAtWindow;
  /// Atom: the argument used.
  std::string certificate;
  /// NotAtom: decomposition over stream indices with >= 2 parts.
  Factorization witness;
  std::size_t window = 0;
  /// Re-checkable data for Atom certificates.
  json evidence = json::object();
};

const char* atom_kind_name(AtomStatus::Kind k);

struct AtomOptions {
  std::uint64_t dp_capacity = kDefaultDpCapacity;
  std::size_t head_limit = 100'000;
};

AtomStatus atom_status(const PosRat& q, const Presentation& pres, std::size_t n,
                       const AtomOptions& opts = {});

struct WindowAtom {
  std::size_t index;
  PosRat term;
  AtomStatus status;
};

std::vector<WindowAtom> atoms_in_window(const Presentation& pres, std::size_t n,
                                        const AtomOptions& opts = {});

/// Re-derives the status from raw data; false when the evidence does not hold.
bool verify_atom_status(const PosRat& q, const Presentation& pres, const AtomStatus& status);

json to_json(const AtomStatus& s, const PosRat& q, const Presentation& pres);

}  // namespace puiseux
