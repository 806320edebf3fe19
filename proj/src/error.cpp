#include "hoover/error.hpp"

namespace hoover {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "configuration error";
    case ErrorCode::kDegenerateRegion: return "degenerate region";
    case ErrorCode::kContractViolation: return "contract violation";
    case ErrorCode::kSimulationFault: return "simulation fault";
    case ErrorCode::kUnknownModel: return "unknown model";
    case ErrorCode::kParse: return "parse error";
    case ErrorCode::kOutOfDomain: return "point outside search space";
    case ErrorCode::kNumerical: return "numerical failure";
    case ErrorCode::kDimensionGuard: return "dimension guard";
    case ErrorCode::kIo: return "i/o error";
  }
  return "unknown error";
}

}  // namespace hoover
