#pragma once

#include <stdexcept>
#include <string>

namespace autrecon {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two values over different finite universes were combined.
class UniverseMismatch : public Error {
 public:
  using Error::Error;
};

/// A size cap (atoms, group order, window length) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (element, permutation, descriptor, config).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace autrecon
