#pragma once

#include <stdexcept>
#include <string>

namespace contourmon {

enum class ErrorCode {
  InvalidArgument,
  Config,
  Io,
  InsufficientData,
  Numerical,
  DegenerateField,
  Shape,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception type thrown by every module of the core library. The C API maps
/// `code()` onto its status enumeration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace contourmon
