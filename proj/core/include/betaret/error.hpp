#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace betaret {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  DivisionByZero,
  DivisionBySignUnknown,
  NoSignChange,
  MultipleRoots,
  OutOfDomain,
  UnresolvableAtPrecision,
  NoReturnWithinCap,
  CapExceeded,
  KMaxExceeded,
  NotAGlst,
  Internal,
};

std::string_view to_string(ErrorCode code);

// Every library failure is reported through this type; the code is stable and
// is what the command-line front end maps onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the return-time machinery; carries the index of the return that
// could not be completed (0-based) and the number of steps taken.
class ReturnCapError : public Error {
 public:
  ReturnCapError(std::size_t return_index, long steps, const std::string& message)
      : Error(ErrorCode::NoReturnWithinCap, message), return_index_(return_index), steps_(steps) {}

  std::size_t return_index() const noexcept { return return_index_; }
  long steps() const noexcept { return steps_; }

 private:
  std::size_t return_index_;
  long steps_;
};

}  // namespace betaret
