#include "mrplate/error.hpp"

namespace mrplate {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::CollinearVertices: return "CollinearVertices";
    case ErrorCode::NoValidLabeling: return "NoValidLabeling";
    case ErrorCode::IndexOutOfGrid: return "IndexOutOfGrid";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::OutsideElement: return "OutsideElement";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NodeMismatch: return "NodeMismatch";
    case ErrorCode::AmbiguousPointLoad: return "AmbiguousPointLoad";
    case ErrorCode::EmptyEdge: return "EmptyEdge";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::OutsideModel: return "OutsideModel";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PermutationNotFound: return "PermutationNotFound";
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::InvalidMaterial: return "InvalidMaterial";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace mrplate
