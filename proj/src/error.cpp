#include "plsa/error.hpp"

#include <cmath>

namespace plsa {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NoCaAtoms: return "NoCaAtoms";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::EmptyChain: return "EmptyChain";
    case ErrorCode::InvalidMotion: return "InvalidMotion";
    case ErrorCode::NegativeDelta: return "NegativeDelta";
    case ErrorCode::BadDelta: return "BadDelta";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnsupportedArity: return "UnsupportedArity";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
    case ErrorCode::IncompatibleTriple: return "IncompatibleTriple";
    case ErrorCode::IncompatibleWalk: return "IncompatibleWalk";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::PropertyViolation: return "PropertyViolation";
    case ErrorCode::InvariantFailure: return "InvariantFailure";
  }
  return "Unknown";
}

void require_delta(double delta) {
  if (std::isnan(delta) || delta < 0.0) {
    throw Error(ErrorCode::NegativeDelta, "delta must be >= 0, got " + std::to_string(delta));
  }
}

}  // namespace plsa
