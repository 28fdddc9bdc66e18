#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ugrowth {

/// Failure classes; the CLI maps each one to a distinct exit code.
enum class ErrorCategory {
  parse,             ///< malformed text or JSON input
  invalid_argument,  ///< well-formed input violating a precondition
  resource,          ///< an enumeration guard was exceeded
  invariant,         ///< an internal consistency check failed
};

std::string_view to_string(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

}  // namespace ugrowth
