#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mtsp {

enum class ErrorKind {
  kInvalidInstance,
  kSchema,
  kInvalidQuery,
  kDecompositionNotApplicable,
  kClosedFormNotApplicable,
  kSingularPartition,
  kInfeasible,
  kOracleLimit,
  kInvalidTour,
  kInvalidRoute,
};

std::string_view to_string(ErrorKind kind);

/// Base for every failure raised by the library. Callers dispatch on kind();
/// stage context can be prepended while the exception propagates.
class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string message);

  ErrorKind kind() const noexcept { return kind_; }
  const char* what() const noexcept override { return rendered_.c_str(); }
  const std::string& message() const noexcept { return message_; }

  /// Prefixes "<stage>: " to the rendered message.
  void add_context(std::string_view stage);

 private:
  ErrorKind kind_;
  std::string message_;
  std::string rendered_;
};

class SingularPartitionError : public Error {
 public:
  SingularPartitionError(std::vector<int> a_ids, std::string message);
  const std::vector<int>& a_ids() const noexcept { return a_ids_; }

 private:
  std::vector<int> a_ids_;
};

/// Why no assignment exists.
struct InfeasibilityCertificate {
  enum class Reason {
    kAggregateShortfall,  // summed demand > summed fleet capacity
    kOversizedPoint,      // one point fits no vehicle on its own
    kPacking,             // totals fit, but no packing exists
  };
  Reason reason = Reason::kPacking;
  std::string resource;  // "mass" or "volume"; empty for kPacking
  int point = 0;         // set for kOversizedPoint
};

class InfeasibleError : public Error {
 public:
  InfeasibleError(InfeasibilityCertificate certificate, std::string message);
  const InfeasibilityCertificate& certificate() const noexcept { return certificate_; }

 private:
  InfeasibilityCertificate certificate_;
};

}  // namespace mtsp
