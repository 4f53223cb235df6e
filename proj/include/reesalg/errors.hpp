#pragma once

#include <stdexcept>
#include <string>

namespace reesalg {

enum class ErrorCode {
  RingMismatch,
  NotBihomogeneous,
  ZeroPolynomial,
  UnknownVariable,
  ZeroXDegree,
  BlockMismatch,
  MixedSupport,
  BudgetExceeded,
  NotSquare,
  SizeOutOfRange,
  NotXDivisible,
  DivisionNotExact,
  IdentityFailed,
  FactorizationInconsistent,
  RankOutOfRange,
  SettingMismatch,
  NotQuadrics,
  NotRegularSequence,
  NonpositiveXDegreeGenerator,
  TooManyVariables,
  ParseError,
  ValidationError,
  Cancelled,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotBihomogeneous: return "NotBihomogeneous";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::ZeroXDegree: return "ZeroXDegree";
    case ErrorCode::BlockMismatch: return "BlockMismatch";
    case ErrorCode::Cancelled: return "Cancelled";
    case ErrorCode::MixedSupport: return "MixedSupport";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::NotXDivisible: return "NotXDivisible";
    case ErrorCode::DivisionNotExact: return "DivisionNotExact";
    case ErrorCode::IdentityFailed: return "IdentityFailed";
    case ErrorCode::FactorizationInconsistent: return "FactorizationInconsistent";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::SettingMismatch: return "SettingMismatch";
    case ErrorCode::NotQuadrics: return "NotQuadrics";
    case ErrorCode::NotRegularSequence: return "NotRegularSequence";
    case ErrorCode::NonpositiveXDegreeGenerator: return "NonpositiveXDegreeGenerator";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : Error(ErrorCode::BudgetExceeded,
              "S-pair budget of " + std::to_string(budget) + " exhausted"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace reesalg
