#pragma once

#include <stdexcept>
#include <string>

namespace farey2d {

enum class ErrorCode {
  NegativeInput,
  Degenerate,
  NotRegular,
  NotInUpperHalfSpace,
  NotCoprimePair,
  OnSplitLine,
  RelabelImpossible,
  WindowEmpty,
  IterationCap,
  SearchCap,
  InvalidTheta,
  InsufficientDepth,
  EmptyEnclosure,
  InvariantViolation,
  ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace farey2d
