#ifndef FDLAB_ERRORS_HPP
#define FDLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fdlab {

// Failure kinds surfaced across the library. CLI maps ConfigInvalid to
// exit code 2 and everything else to 3.
enum class ErrorCode {
    PointOutsideDomain,
    CoincidentPoints,
    DuplicatePoints,
    NonSymmetricInput,
    IndexOutOfRange,
    GridTooShort,
    ShootingDiverged,
    StepTooLarge,
    RadiusExceedsCutoff,
    QuadratureNotConverged,
    NonpositiveTime,
    MatrixNotPD,
    NewtonDiverged,
    NonpositiveB,
    NewtonStalled,
    NegativeIterate,
    MaxStepsExceeded,
    TimeOutOfRange,
    AnsatzNotRadial,
    InsufficientSamples,
    SingularDesignMatrix,
    SubcriticalUnsupported,
    NonpositiveCenterValue,
    NorthPole,
    UnsupportedDomain,
    ConfigInvalid,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
          code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

}  // namespace fdlab

#endif
