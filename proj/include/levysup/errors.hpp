#pragma once

#include <stdexcept>
#include <string>

namespace levysup {

// Failure taxonomy. The CLI maps codes to exit status: bad input -> 1,
// numerical failure -> 2.
enum class Err {
  Validation,
  ConfigError,
  DomainError,
  MeanNotNegative,
  DriftZero,
  HypothesisViolated,
  EvaluationError,
  QuadratureError,
  RootCountMismatch,
  ConvergenceError,
  PrecisionError,
  PoleHit,
  IllConditioned,
  GridTooCoarse,
  EnvelopeError,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::Validation: return "ValidationError";
    case Err::ConfigError: return "ConfigError";
    case Err::DomainError: return "DomainError";
    case Err::MeanNotNegative: return "MeanNotNegative";
    case Err::DriftZero: return "DriftZero";
    case Err::HypothesisViolated: return "HypothesisViolated";
    case Err::EvaluationError: return "EvaluationError";
    case Err::QuadratureError: return "QuadratureError";
    case Err::RootCountMismatch: return "RootCountMismatch";
    case Err::ConvergenceError: return "ConvergenceError";
    case Err::PrecisionError: return "PrecisionError";
    case Err::PoleHit: return "PoleHit";
    case Err::IllConditioned: return "IllConditioned";
    case Err::GridTooCoarse: return "GridTooCoarse";
    case Err::EnvelopeError: return "EnvelopeError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what),
        code_(code) {}
  Err code() const noexcept { return code_; }

  int exit_code() const noexcept {
    switch (code_) {
      case Err::Validation:
      case Err::ConfigError:
      case Err::DomainError:
      case Err::MeanNotNegative:
      case Err::DriftZero:
      case Err::HypothesisViolated:
        return 1;
      default:
        return 2;
    }
  }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace levysup
