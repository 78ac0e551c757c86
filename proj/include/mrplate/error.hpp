#pragma once

#include <stdexcept>
#include <string>

namespace mrplate {

enum class ErrorCode {
  CollinearVertices,
  NoValidLabeling,
  IndexOutOfGrid,
  OutsideDomain,
  QuadratureFailure,
  OutsideElement,
  DimensionMismatch,
  NodeMismatch,
  AmbiguousPointLoad,
  EmptyEdge,
  SingularSystem,
  NotConverged,
  OutsideModel,
  DivisionByZero,
  PermutationNotFound,
  UnknownCase,
  InvalidMaterial,
  InvalidConfig,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mrplate
