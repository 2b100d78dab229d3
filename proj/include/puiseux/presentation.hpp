#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "puiseux/ratcore.hpp"

namespace puiseux {

using json = nlohmann::json;

/// Multiset of stream terms by 1-based stream index.
struct Factorization {
  std::map<std::size_t, BigInt> coeffs;

  BigInt parts() const;
  PosRat value(const std::function<PosRat(std::size_t)>& term) const;
  /// "q = c1·(a1/b1) + ..."
  std::string str(const PosRat& q, const std::function<PosRat(std::size_t)>& term) const;
  json to_json() const;
};

enum class FlagKind {
  DenominatorsBounded,
  DenominatorChainDivides,
  DenominatorsUnbounded,
  NumeratorsBounded,
  SpectrumEmpty,
  InfimumPositive,
  OverPrimes,
  EventuallyIncreasing,
};

const char* flag_name(FlagKind kind);
std::optional<FlagKind> flag_from_name(std::string_view name);

struct Provenance {
  bool declared = true;
  std::size_t window = 0;  // meaningful when !declared

  static Provenance verified_on(std::size_t n) { return {false, n}; }
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct StructuralFlag {
  FlagKind kind;
  /// NumeratorsBounded: B. DenominatorsBounded: optional D.
  std::optional<BigInt> bound;
  /// InfimumPositive.
  std::optional<PosRat> lower_bound;
  /// OverPrimes.
  std::vector<std::uint64_t> primes;
  Provenance provenance;

  static StructuralFlag simple(FlagKind kind) { return {kind, {}, {}, {}, {}}; }
  static StructuralFlag numerators_bounded(BigInt b) {
    return {FlagKind::NumeratorsBounded, std::move(b), {}, {}, {}};
  }
  static StructuralFlag infimum_positive(PosRat l) {
    return {FlagKind::InfimumPositive, {}, std::move(l), {}, {}};
  }
  static StructuralFlag over_primes(std::vector<std::uint64_t> p) {
    return {FlagKind::OverPrimes, {}, {}, std::move(p), {}};
  }

  std::string str() const;
  json to_json() const;
  static StructuralFlag from_json(const json& j, const std::string& field);
  friend bool operator==(const StructuralFlag&, const StructuralFlag&) = default;
};

/// A named parametric infinite stream together with the facts its term rule
/// guarantees. Indices are 1-based.
class Family {
 public:
  virtual ~Family() = default;

  virtual std::string name() const = 0;
  virtual json params() const = 0;
  virtual PosRat term(std::size_t n) const = 0;
  virtual std::vector<StructuralFlag> proven_flags() const = 0;
  /// Largest window the family supports at practical cost.
  virtual std::size_t window_cap() const { return 100'000; }

  /// Every term of index > N is >= the returned value.
  virtual std::optional<PosRat> tail_lower_bound(std::size_t /*N*/) const { return std::nullopt; }
  /// Every term of index > N has nu_p >= the returned value.
  virtual std::optional<std::int64_t> tail_pval_floor(std::uint64_t p, std::size_t N) const;
  /// Primes beyond those of q and the window worth trying as obstructions
  /// for term(n).
  virtual std::vector<std::uint64_t> obstruction_primes(std::size_t /*n*/) const { return {}; }

  /// Every term is an atom of the generated monoid.
  virtual bool terms_are_atoms() const { return false; }
  /// Every term is a sum of at least two nonzero monoid elements.
  virtual bool all_terms_split() const { return false; }
  /// A prime p such that every term with nu_p < 0 splits.
  virtual std::optional<std::uint64_t> negative_valuation_split_prime() const { return std::nullopt; }
  /// Explicit decomposition of term(n) over stream indices with >= 2 parts.
  virtual std::optional<Factorization> split(std::size_t /*n*/) const { return std::nullopt; }
  /// Among terms with a nontrivial denominator, nu_p of the denominator is
  /// strictly increasing along the stream for every prime of OverPrimes.
  virtual bool denominator_valuations_increase() const { return false; }
  /// Human description of A(M) when known.
  virtual std::string atom_pattern() const { return {}; }
  /// Extra evidence printed with classifications.
  virtual json notes(std::size_t /*window*/) const { return json::object(); }
};

/// Throws DomainError for unknown names or invalid parameters.
std::shared_ptr<const Family> make_family_stream(const std::string& name, const json& params);
std::vector<std::string> family_names();

struct GeneratorStream {
  enum class Kind { Finite, Family };
  Kind kind = Kind::Finite;
  std::vector<PosRat> terms;
  std::shared_ptr<const Family> family;
};

class Presentation {
 public:
  static Presentation finite(std::vector<PosRat> terms, std::string label = {});
  static Presentation from_family(std::shared_ptr<const Family> family, std::string label = {});

  const std::string& label() const { return label_; }
  const GeneratorStream& stream() const { return stream_; }
  const std::vector<StructuralFlag>& flags() const { return flags_; }
  /// Family streams only: terms are scale * base term. Flags and family facts
  /// describe the unscaled stream.
  const PosRat& scale() const { return scale_; }

  bool is_finite() const { return stream_.kind == GeneratorStream::Kind::Finite; }
  const Family* family() const { return stream_.family.get(); }
  std::size_t length() const;

  PosRat term(std::size_t n) const;
  std::vector<PosRat> window(std::size_t n) const;
  /// Window length actually used for a request of n.
  std::size_t effective_window(std::size_t n) const;

  const StructuralFlag* find(FlagKind kind) const;
  bool has(FlagKind kind) const { return find(kind) != nullptr; }

  Presentation with_flags(std::vector<StructuralFlag> flags) const;
  Presentation with_label(std::string label) const;
  /// c * M. Finite lists are multiplied out; families record the scale.
  Presentation scaled(const PosRat& c) const;
  /// The family presentation with scale 1.
  Presentation unscaled() const;

 private:
  std::string label_;
  GeneratorStream stream_;
  std::vector<StructuralFlag> flags_;
  PosRat scale_{1};
};

/// Catalog family with the flags its term rule proves.
Presentation make_family(const std::string& name, const json& params = json::object());

std::vector<PosRat> window(const Presentation& pres, std::size_t n);

enum class FlagStatus { Confirmed, Refuted, Undetermined };
const char* flag_status_name(FlagStatus s);

struct FlagCheck {
  StructuralFlag flag;
  FlagStatus status;
  std::string detail;
};

std::vector<FlagCheck> verify_flags(const Presentation& pres, std::size_t n);

json to_json(const Presentation& pres);
Presentation from_json(const json& doc);
/// Throws ParseError with line/field diagnostics.
Presentation parse_presentation(const std::string& text);
Presentation load(const std::string& path);
void save(const Presentation& pres, const std::string& path);

std::string rat_list_str(const std::vector<PosRat>& v);

}  // namespace puiseux
