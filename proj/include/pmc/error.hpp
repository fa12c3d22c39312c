#pragma once

#include <stdexcept>
#include <string>

namespace pmc {

enum class ErrorKind {
  Range,
  InvalidArgument,
  UnsupportedDependence,
  ImmediateTruncation,
  Stiffness,
  DegreesOfFreedom,
  Bracket,
  Convergence,
  DegenerateSlope,
  Consistency,
  Config,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

}  // namespace pmc
