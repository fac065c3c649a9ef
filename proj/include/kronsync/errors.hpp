#pragma once

#include <stdexcept>
#include <string>

namespace kronsync {

/// Failure kinds surfaced by the library. CLI maps these onto exit codes:
/// input problems -> 1, numerical problems -> 2, inconclusive verdicts -> 4.
enum class ErrorCode {
  BadInput,
  NegativeWeight,
  DuplicateEdge,
  SelfLoop,
  BadIndex,
  EmptyBoundary,
  DimensionMismatch,
  NotPositiveDefinite,
  CertificationFailed,
  EigenSolverFailure,
  SingularStepMatrix,
  StepDiverged,
  InconsistentConstraint,
  VerdictIsSync,
  NoResonance,
  EtaNotScalable,
  InconclusiveHorizon,
};

const char* error_code_name(ErrorCode code) noexcept;

/// True for codes caused by malformed or precondition-violating input.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace kronsync
