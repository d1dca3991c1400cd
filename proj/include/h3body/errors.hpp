#pragma once

#include <stdexcept>
#include <string>

namespace h3body {

// Input errors map to CLI exit code 2, numerical failures to exit code 3.
enum class ErrorKind { input, numerical };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define H3BODY_DEFINE_ERROR(Name, Kind)                                 \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

H3BODY_DEFINE_ERROR(SingularBiquaternion, numerical)
H3BODY_DEFINE_ERROR(ConstraintViolation, input)
H3BODY_DEFINE_ERROR(KindMismatch, input)
H3BODY_DEFINE_ERROR(NonRealPairing, numerical)
H3BODY_DEFINE_ERROR(BranchPoint, numerical)
H3BODY_DEFINE_ERROR(StepRejected, numerical)
H3BODY_DEFINE_ERROR(ConstraintBlowup, numerical)
H3BODY_DEFINE_ERROR(DegenerateSeparation, input)
H3BODY_DEFINE_ERROR(NoBracket, numerical)
H3BODY_DEFINE_ERROR(ResidualTooLarge, numerical)
H3BODY_DEFINE_ERROR(InvalidInput, input)

#undef H3BODY_DEFINE_ERROR

}  // namespace h3body
