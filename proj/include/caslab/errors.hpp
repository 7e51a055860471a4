#pragma once

#include <stdexcept>
#include <string>

namespace caslab {

// Error taxonomy shared by all modules.  The CLI maps categories onto
// process exit codes: Config -> 1, Numerical -> 2, Resource -> 3.
enum class ErrorCategory { Config, Numerical, Resource };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const { return category_; }

private:
  ErrorCategory category_;
};

struct InvalidArgumentError : Error {
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCategory::Config, what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what)
      : Error(ErrorCategory::Config, what) {}
};

struct UvValidityError : Error {
  explicit UvValidityError(const std::string& what)
      : Error(ErrorCategory::Config, what) {}
};

struct UnsupportedCutoffError : Error {
  explicit UnsupportedCutoffError(const std::string& what)
      : Error(ErrorCategory::Config, what) {}
};

struct InvalidComparisonError : Error {
  explicit InvalidComparisonError(const std::string& what)
      : Error(ErrorCategory::Config, what) {}
};

struct ImaginaryFrequencyError : Error {
  explicit ImaginaryFrequencyError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

struct TruncationError : Error {
  explicit TruncationError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

struct NumericalFailureError : Error {
  explicit NumericalFailureError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

struct ConditioningError : Error {
  explicit ConditioningError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

struct DivergentMomentError : Error {
  explicit DivergentMomentError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

struct NonConvergenceError : Error {
  explicit NonConvergenceError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

struct ResourceLimitError : Error {
  explicit ResourceLimitError(const std::string& what)
      : Error(ErrorCategory::Resource, what) {}
};

}  // namespace caslab
