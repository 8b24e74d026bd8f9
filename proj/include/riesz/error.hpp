#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace riesz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in incompatible spaces (dimension, arity or kind).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A sequence contradicted its declared monotonicity; `index` is the
/// first (1-based) term that breaks the claim.
class OrderClaimViolation : public PreconditionError {
 public:
  OrderClaimViolation(const std::string& what, std::uint64_t index)
      : PreconditionError(what), index_(index) {}
  std::uint64_t index() const noexcept { return index_; }

 private:
  std::uint64_t index_;
};

/// Config rejected before any probe ran. `path` is a JSON-pointer-like
/// location such as "probes[2].params.K".
class ValidationError : public Error {
 public:
  ValidationError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace riesz
