#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace puiseux {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A precondition on a value was violated (zero denominator, non-prime, ...).
struct DomainError : Error {
  using Error::Error;
};

/// Malformed text or document. `line` is 1-based, 0 when unknown; `field` is a
/// JSON-pointer-like path when the error concerns a document field.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line = 0, std::string field = {},
             std::size_t position = 0)
      : Error(what), line(line), field(std::move(field)), position(position) {}
  std::size_t line;
  std::string field;
  std::size_t position;
};

/// Two structural flags of one presentation contradict each other.
struct FlagConflictError : Error {
  using Error::Error;
};

/// A window check refuted a declared flag or family fact.
struct FlagRefutedError : Error {
  using Error::Error;
};

/// The window is too short to realize a required inequality.
struct InsufficientWindow : Error {
  InsufficientWindow(const std::string& what, std::size_t suggested)
      : Error(what), suggested_window(suggested) {}
  std::size_t suggested_window;
};

}  // namespace puiseux
