#include "contourmon/error.hpp"

namespace contourmon {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Config: return "configuration error";
    case ErrorCode::Io: return "i/o error";
    case ErrorCode::InsufficientData: return "insufficient data";
    case ErrorCode::Numerical: return "numerical error";
    case ErrorCode::DegenerateField: return "degenerate field";
    case ErrorCode::Shape: return "shape mismatch";
  }
  return "unknown error";
}

}  // namespace contourmon
