#pragma once

#include <stdexcept>
#include <string>

namespace rauzy {

// Base class for everything the library throws on purpose. Each subclass
// maps to one of the CLI exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed permutation text or an invalid alphabet.
class ParseError : public Error {
public:
  using Error::Error;
};

/// A move or enumeration was asked of a reducible permutation.
class ReducibleError : public Error {
public:
  using Error::Error;
};

/// The vertex guard stopped enumeration before the class was closed.
class TruncatedDiagramError : public Error {
public:
  using Error::Error;
};

/// A structural assertion failed: a move, marking or group computation broke
/// one of its invariants. Always a bug, never a property of the input.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// Misuse of an API: non-bijective renumbering, element outside G', etc.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace rauzy
