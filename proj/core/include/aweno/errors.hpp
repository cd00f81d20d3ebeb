#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace aweno {

enum class ErrorKind {
  non_positive_pressure,
  degenerate_state,
  imaginary_sound_speed,
  degenerate_speeds,
  inadmissible_node,
  no_convergence,
  unknown_problem,
  config,
};

const char* to_string(ErrorKind kind);

// Compact %g rendering for error messages.
inline std::string show(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// All numerical failures raised by the library. The kind is what callers
// branch on; the message carries cell/time context when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }
  bool numerical() const noexcept {
    return kind_ != ErrorKind::unknown_problem && kind_ != ErrorKind::config;
  }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_positive_pressure: return "NonPositivePressure";
    case ErrorKind::degenerate_state: return "DegenerateState";
    case ErrorKind::imaginary_sound_speed: return "ImaginarySoundSpeed";
    case ErrorKind::degenerate_speeds: return "DegenerateSpeeds";
    case ErrorKind::inadmissible_node: return "InadmissibleNode";
    case ErrorKind::no_convergence: return "NoConvergence";
    case ErrorKind::unknown_problem: return "UnknownProblem";
    case ErrorKind::config: return "ConfigError";
  }
  return "Error";
}

}  // namespace aweno
