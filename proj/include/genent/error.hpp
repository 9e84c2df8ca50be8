#pragma once

#include <stdexcept>
#include <string>

namespace genent {

enum class ErrorKind {
  InvalidArgument,
  InvalidSector,
  NotInSector,
  Normalization,
  DimensionMismatch,
  Unsupported,
  Numerical,
};

/// Every error raised by the library carries a kind so front ends can map it
/// to exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Numerical failures are distinguished from bad input.
  bool is_numerical() const noexcept { return kind_ == ErrorKind::Numerical; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace genent
