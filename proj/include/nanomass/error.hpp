#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace nanomass {

enum class ErrorKind {
  non_positive_parameter,
  q_too_small,
  negative_temperature,
  band_exceeds_domain,
  tolerance_not_met,
  evaluation_cap_exceeded,
  zero_temperature_classical,
  bistable_regime,
  no_physical_root,
  unstable_drift_matrix,
  singular_system,
  parse_error,
  validation_error,
  io_error,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::non_positive_parameter: return "non_positive_parameter";
    case ErrorKind::q_too_small: return "q_too_small";
    case ErrorKind::negative_temperature: return "negative_temperature";
    case ErrorKind::band_exceeds_domain: return "band_exceeds_domain";
    case ErrorKind::tolerance_not_met: return "tolerance_not_met";
    case ErrorKind::evaluation_cap_exceeded: return "evaluation_cap_exceeded";
    case ErrorKind::zero_temperature_classical: return "zero_temperature_classical";
    case ErrorKind::bistable_regime: return "bistable_regime";
    case ErrorKind::no_physical_root: return "no_physical_root";
    case ErrorKind::unstable_drift_matrix: return "unstable_drift_matrix";
    case ErrorKind::singular_system: return "singular_system";
    case ErrorKind::parse_error: return "parse_error";
    case ErrorKind::validation_error: return "validation_error";
    case ErrorKind::io_error: return "io_error";
  }
  return "unknown";
}

/// Base exception for every failure raised by the library. `field()` names
/// the offending parameter or config key when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string field = {})
      : std::runtime_error(std::move(message)), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

  bool is_config_error() const noexcept {
    return kind_ == ErrorKind::parse_error || kind_ == ErrorKind::validation_error;
  }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace nanomass
