#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chemotax {

enum class ErrorKind {
  DivisionByZeroRatio,
  SingularDenominator,
  NoCoexistenceState,
  ZeroSensitivity,
  KZero,
  NoFeasibleMode,
  StepRejected,
  InvariantViolation,
  NewtonDiverged,
  SingularJacobian,
  BracketMiss,
  ResonanceError,
  NoBifurcation,
  NZero,
  OutsideWindow,
  NoEqualArea,
  OutsideI0,
  RTooSmall,
  UnknownKey,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// 2 config, 3 numerical, 4 invariant
int exit_code_for(ErrorKind k);

}  // namespace chemotax
