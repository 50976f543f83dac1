#include "fdlab/errors.hpp"

namespace fdlab {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::PointOutsideDomain: return "PointOutsideDomain";
        case ErrorCode::CoincidentPoints: return "CoincidentPoints";
        case ErrorCode::DuplicatePoints: return "DuplicatePoints";
        case ErrorCode::NonSymmetricInput: return "NonSymmetricInput";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::GridTooShort: return "GridTooShort";
        case ErrorCode::ShootingDiverged: return "ShootingDiverged";
        case ErrorCode::StepTooLarge: return "StepTooLarge";
        case ErrorCode::RadiusExceedsCutoff: return "RadiusExceedsCutoff";
        case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorCode::NonpositiveTime: return "NonpositiveTime";
        case ErrorCode::MatrixNotPD: return "MatrixNotPD";
        case ErrorCode::NewtonDiverged: return "NewtonDiverged";
        case ErrorCode::NonpositiveB: return "NonpositiveB";
        case ErrorCode::NewtonStalled: return "NewtonStalled";
        case ErrorCode::NegativeIterate: return "NegativeIterate";
        case ErrorCode::MaxStepsExceeded: return "MaxStepsExceeded";
        case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
        case ErrorCode::AnsatzNotRadial: return "AnsatzNotRadial";
        case ErrorCode::InsufficientSamples: return "InsufficientSamples";
        case ErrorCode::SingularDesignMatrix: return "SingularDesignMatrix";
        case ErrorCode::SubcriticalUnsupported: return "SubcriticalUnsupported";
        case ErrorCode::NonpositiveCenterValue: return "NonpositiveCenterValue";
        case ErrorCode::NorthPole: return "NorthPole";
        case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "UnknownError";
}

}  // namespace fdlab
