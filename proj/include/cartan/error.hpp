#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

// Every failure mode the library reports. The CLI maps these onto exit
// codes; tests match on the code rather than the message text.
enum class ErrorCode {
  NotHermitian,
  NotPositive,
  Singular,
  DimensionMismatch,
  ZeroVector,
  SingularFactor,
  NotUnitary,
  NotStrictContraction,
  SquareDims,
  NotAMember,
  SingularDenominator,
  ReconstructionFailure,
  InternalInconsistency,
  StructureResidual,
  InconsistentPair,
  SpectrumMismatch,
  DegenerateBlockGauge,
  IllConditionedEigenbasis,
  NotABasis,
  KTooLarge,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cartan
