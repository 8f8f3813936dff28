#pragma once

#include <stdexcept>
#include <string>

namespace glmd {

// Every library failure derives from Error; the kind() tag drives CLI exit codes.
enum class ErrorKind {
  InvalidInput,
  InsufficientPrecision,
  Undecidable,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(name) {}
  ErrorKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define GLMD_DEFINE_ERROR(Name, Kind)                            \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what)                       \
        : Error(ErrorKind::Kind, #Name, what) {}                 \
  };

GLMD_DEFINE_ERROR(InvalidArgument, InvalidInput)
GLMD_DEFINE_ERROR(ParseError, InvalidInput)
GLMD_DEFINE_ERROR(NotInvertible, InvalidInput)
GLMD_DEFINE_ERROR(NotIntegral, InvalidInput)
GLMD_DEFINE_ERROR(NonCoprimeFactors, InvalidInput)
GLMD_DEFINE_ERROR(PeriodMismatch, InvalidInput)
GLMD_DEFINE_ERROR(DepthMismatch, InvalidInput)
GLMD_DEFINE_ERROR(InvalidParameter, InvalidInput)
GLMD_DEFINE_ERROR(NotFull, InvalidInput)
GLMD_DEFINE_ERROR(InconsistentLabeling, InvalidInput)
GLMD_DEFINE_ERROR(OutOfSingletonRange, InvalidInput)
GLMD_DEFINE_ERROR(InsufficientPrecision, InsufficientPrecision)
GLMD_DEFINE_ERROR(IndeterminateValuation, InsufficientPrecision)
GLMD_DEFINE_ERROR(NotSemiPure, Undecidable)
GLMD_DEFINE_ERROR(NotCertifiedSemisimple, Undecidable)
GLMD_DEFINE_ERROR(CertificationUnavailable, Undecidable)
GLMD_DEFINE_ERROR(ThresholdOutOfWindow, Undecidable)
GLMD_DEFINE_ERROR(NormalizationFailed, Undecidable)
GLMD_DEFINE_ERROR(NoMatching, Undecidable)
GLMD_DEFINE_ERROR(Undecidable, Undecidable)

#undef GLMD_DEFINE_ERROR

}  // namespace glmd
