#pragma once

#include <stdexcept>
#include <string>

namespace shafstats {

enum class ErrorKind {
  InvalidArgument,
  SingularCurve,
  BadPrime,
  OutOfRange,
  EmptyWindow,
  Capacity,
  Io,
  Format,
  Checksum,
  CurveMismatch,
  Version,
  Internal,
};

// Single exception type for the library. The kind drives CLI exit codes and
// the Python exception mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace shafstats
