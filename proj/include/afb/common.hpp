#pragma once

#include <stdexcept>
#include <string>

namespace afb {

enum class ErrorCategory {
  config,   // invalid parameters or flag combinations
  format,   // malformed or unsupported file content
  io,       // filesystem / OS failures
  shape,    // dimension or grid mismatches between values
  numeric,  // degenerate or non-finite numerical input
};

const char* error_category_name(ErrorCategory c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

}  // namespace afb
