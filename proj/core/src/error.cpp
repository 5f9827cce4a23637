#include "betaret/error.hpp"

namespace betaret {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::DivisionBySignUnknown: return "DivisionBySignUnknown";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::UnresolvableAtPrecision: return "UnresolvableAtPrecision";
    case ErrorCode::NoReturnWithinCap: return "NoReturnWithinCap";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::KMaxExceeded: return "KMaxExceeded";
    case ErrorCode::NotAGlst: return "NotAGlst";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace betaret
