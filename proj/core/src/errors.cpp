#include "mtsp/errors.hpp"

#include <utility>

namespace mtsp {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidInstance: return "invalid-instance";
    case ErrorKind::kSchema: return "schema";
    case ErrorKind::kInvalidQuery: return "invalid-query";
    case ErrorKind::kDecompositionNotApplicable: return "decomposition-not-applicable";
    case ErrorKind::kClosedFormNotApplicable: return "closed-form-not-applicable";
    case ErrorKind::kSingularPartition: return "singular-partition";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kOracleLimit: return "oracle-limit";
    case ErrorKind::kInvalidTour: return "invalid-tour";
    case ErrorKind::kInvalidRoute: return "invalid-route";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, std::string message)
    : kind_(kind), message_(std::move(message)) {
  rendered_ = std::string(to_string(kind_)) + " error: " + message_;
}

void Error::add_context(std::string_view stage) {
  rendered_ = std::string(stage) + ": " + rendered_;
}

SingularPartitionError::SingularPartitionError(std::vector<int> a_ids, std::string message)
    : Error(ErrorKind::kSingularPartition, std::move(message)), a_ids_(std::move(a_ids)) {}

InfeasibleError::InfeasibleError(InfeasibilityCertificate certificate, std::string message)
    : Error(ErrorKind::kInfeasible, std::move(message)), certificate_(std::move(certificate)) {}

}  // namespace mtsp
