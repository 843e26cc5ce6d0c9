#pragma once

#include <stdexcept>
#include <string>

namespace setdyn {

/// Failure categories surfaced by the library. The CLI maps these to
/// process exit codes; tests match on them directly.
enum class ErrorKind {
  DegenerateDirection,
  EmptySet,
  ZeroEdge,
  NonFinite,
  SingularJacobian,
  NoConvergence,
  ValidationFailed,
  WindowEscape,
  NoStabilization,
  CertificateFailed,
  NotInvariant,
  SelfIntersecting,
  TooFewVertices,
  SingularFront,
  ContactDrift,
  NonConvergent,
  NotInvariantLoop,
  RasterTooCoarse,
  BaseNotAttracting,
  ConfigError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace setdyn
