#pragma once

#include <stdexcept>
#include <string>

namespace exactreach {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a model violates a structural invariant.
class ValidationError : public Error {
 public:
  enum class Code {
    DistributionNotStochastic,
    EmptyEnabledSet,
    DanglingTarget,
    InvalidProbability,
    IncompleteScheduler,
    NotAMarkovChain,
    MalformedPath,
  };

  ValidationError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Raised by the model file parser; carries the 1-based source position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Raised by value iteration.
class ValueIterationError : public Error {
 public:
  enum class Code { NonFiniteValue, NonConvergence };
  ValueIterationError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Raised by LP construction.
class LpBuildError : public Error {
 public:
  enum class Code { EmptyMaybeSet, SchedulerDomainMismatch };
  LpBuildError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Raised by the oracle module.
class OracleError : public Error {
 public:
  enum class Code { TooManySchedulers, NonAptStart };
  OracleError(Code code, const std::string& what) : Error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

}  // namespace exactreach
