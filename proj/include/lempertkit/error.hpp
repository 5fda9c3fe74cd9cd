#pragma once

#include <stdexcept>
#include <string>

namespace lempert {

enum class ErrorKind {
  InvalidInput,     // malformed or out-of-range arguments
  NotOnBoundary,    // a point expected on the boundary is not
  NearTangential,   // boundary direction too close to the complex tangent space
  SolverFailure,    // Gauss-Newton / Newton stagnation or non-convergence
  NotStationary,    // boundary data has negative Fourier modes above tolerance
  WindingMismatch,  // contour winding number differs from the expected value
  Divergent,        // a limit estimate does not settle
  Io,               // file or parse failures
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace lempert
