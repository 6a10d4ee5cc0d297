#pragma once

#include <stdexcept>
#include <string>

namespace fdsl {

/// Base class for every error the library raises. `code()` is a stable,
/// machine-readable name used by the CLI error line.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define FDSL_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  }

/// All maps are rank-deficient; probabilities cannot be normalized.
FDSL_DEFINE_ERROR(DegenerateSystem);
/// An iterate left the divergence bound (or became non-finite).
FDSL_DEFINE_ERROR(Diverged);
FDSL_DEFINE_ERROR(ExhaustedRetries);
FDSL_DEFINE_ERROR(SearchTimeout);
FDSL_DEFINE_ERROR(EmptyCloud);
FDSL_DEFINE_ERROR(InvalidCount);
FDSL_DEFINE_ERROR(InvalidAxisValue);
FDSL_DEFINE_ERROR(InvalidConfig);
FDSL_DEFINE_ERROR(IoError);
FDSL_DEFINE_ERROR(IntegrityError);
FDSL_DEFINE_ERROR(ParseError);

#undef FDSL_DEFINE_ERROR

}  // namespace fdsl
