#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace clifford_mellin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands from different algebras, grade out of range and similar misuse.
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Raised when a precondition stated by a theorem (blade-like roots,
/// non-degenerate pair, on-grid frequency, ...) does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

class NotARootError : public Error {
 public:
  NotARootError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class OffManifoldError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. offset() is the byte position where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Well-formed but unsupported input (e.g. maxval other than 255).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace clifford_mellin
