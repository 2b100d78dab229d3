#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "puiseux/presentation.hpp"

namespace puiseux {

using Rational = mpq_class;

/// Finite truncation of a Puiseux series: exponent -> nonzero coefficient.
class PuiseuxSeries {
 public:
  PuiseuxSeries() = default;
  static PuiseuxSeries monomial(Rational coeff, Rational exponent);

  /// Terms in strictly increasing exponent order.
  const std::map<Rational, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Least common denominator of the exponents; 1 for the zero series.
  BigInt ramification() const;
  std::string str() const;

  friend PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend PuiseuxSeries operator-(const PuiseuxSeries& a);
  friend PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
  friend bool operator==(const PuiseuxSeries& a, const PuiseuxSeries& b) = default;

 private:
  void add_term(const Rational& exponent, const Rational& coeff);
  std::map<Rational, Rational> terms_;
};

/// Grammar (whitespace ignored):
///   series := ["+"|"-"] term (("+"|"-") term)*
///   term   := coeff "*" mono | coeff | mono
///   mono   := "T" ["^" exp]
///   exp    := int | "(" ["-"] digits ["/" digits] ")"
///   coeff  := digits ["/" digits]
/// Throws ParseError with the 0-based character position.
PuiseuxSeries parse_series(std::string_view text);

/// Least exponent; empty optional stands for infinity (the zero series).
std::optional<Rational> val_p_series(const PuiseuxSeries& s);

/// Leading term of s*t only.
PuiseuxSeries leading_product(const PuiseuxSeries& s, const PuiseuxSeries& t);

/// Finite presentation generated by the valuations, deduplicated and sorted.
/// Valuation-0 series contribute the identity and are skipped. Throws
/// DomainError on a negative valuation or the zero series.
Presentation monoid_image(const std::vector<PuiseuxSeries>& series, std::string label = {});

}  // namespace puiseux
