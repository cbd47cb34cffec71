#ifndef MHS_ERRORS_HPP
#define MHS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mhs {

enum class ErrorKind {
  InvalidDimension,
  InvalidParameter,
  Domain,
  SingularPoint,
  OutOfWindow,
  NoSolution,
  IntegrationFailure,
  Convergence,
  GenerationFailed,
  DegenerateElement,
  NumericalFailure,
  ShiftRetryExhausted,
  NotSimple,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Bad input as opposed to a numerical breakdown; drives the CLI exit status.
  bool is_validation() const noexcept {
    switch (kind_) {
      case ErrorKind::InvalidDimension:
      case ErrorKind::InvalidParameter:
      case ErrorKind::Domain:
      case ErrorKind::OutOfWindow:
      case ErrorKind::NoSolution:
      case ErrorKind::Io:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::SingularPoint: return "singular-point";
    case ErrorKind::OutOfWindow: return "out-of-window";
    case ErrorKind::NoSolution: return "no-solution";
    case ErrorKind::IntegrationFailure: return "integration-failure";
    case ErrorKind::Convergence: return "convergence";
    case ErrorKind::GenerationFailed: return "generation-failed";
    case ErrorKind::DegenerateElement: return "degenerate-element";
    case ErrorKind::NumericalFailure: return "numerical-failure";
    case ErrorKind::ShiftRetryExhausted: return "shift-retry-exhausted";
    case ErrorKind::NotSimple: return "not-simple";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

}  // namespace mhs

#endif  // MHS_ERRORS_HPP
