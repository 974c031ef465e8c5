#pragma once

#include <stdexcept>
#include <string>

namespace finext {

// Every failure mode named by an operation contract gets its own kind so
// callers (and the CLI exit-code mapping) can dispatch without string
// matching.
enum class ErrorKind {
  DomainMismatch,
  NotSurjective,
  NotInvariant,
  NotInjectiveInvariant,
  SearchBudgetExceeded,
  ZeroExcluded,
  CoreDisagreement,
  OverlapViolation,
  BaseNotInjective,
  ZeroDecomposition,
  NotCoherentInput,
  NotGaunt,
  IncompatibleQuotient,
  EmptyConnHat,
  ParseError,
  ResolutionError,
  UsageError,
  InvalidConstruction,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace finext
