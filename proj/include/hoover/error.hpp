#pragma once

#include <stdexcept>
#include <string>

namespace hoover {

enum class ErrorCode {
  kConfig = 1,
  kDegenerateRegion,
  kContractViolation,
  kSimulationFault,
  kUnknownModel,
  kParse,
  kOutOfDomain,
  kNumerical,
  kDimensionGuard,
  kIo,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Same code, message prefixed with `context: `.
  Error with_context(const std::string& context) const {
    return Error(code_, context + ": " + what());
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace hoover
