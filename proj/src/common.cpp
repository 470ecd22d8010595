#include "afb/common.hpp"

namespace afb {

const char* error_category_name(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::format: return "format";
    case ErrorCategory::io: return "io";
    case ErrorCategory::shape: return "shape";
    case ErrorCategory::numeric: return "numeric";
  }
  return "unknown";
}

}  // namespace afb
