#pragma once

#include <stdexcept>
#include <string>

namespace locpriv {

// Error categories map 1:1 onto CLI exit codes (see README).
enum class ErrorCategory : int {
  Config = 2,
  Data = 3,
  Numeric = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& msg)
      : std::runtime_error(msg), category_(category) {}
  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

#define LOCPRIV_ERROR(NAME, CATEGORY)                     \
  struct NAME : Error {                                   \
    explicit NAME(const std::string& msg)                 \
        : Error(ErrorCategory::CATEGORY, #NAME ": " + msg) {} \
  }

LOCPRIV_ERROR(DimensionMismatch, Data);
LOCPRIV_ERROR(NotStochastic, Data);
LOCPRIV_ERROR(NegativeEntry, Data);
LOCPRIV_ERROR(InconsistentObservation, Data);
LOCPRIV_ERROR(TooManyMalformed, Data);
LOCPRIV_ERROR(EmptyInput, Data);
LOCPRIV_ERROR(NoRecords, Data);
LOCPRIV_ERROR(SequenceTooShort, Data);
LOCPRIV_ERROR(TooShort, Data);

LOCPRIV_ERROR(NoConvergence, Numeric);
LOCPRIV_ERROR(EigenFailure, Numeric);
LOCPRIV_ERROR(ProbabilityOutOfRange, Numeric);
LOCPRIV_ERROR(NotStationary, Numeric);
LOCPRIV_ERROR(DegenerateSpace, Numeric);

LOCPRIV_ERROR(InvalidGrid, Config);
LOCPRIV_ERROR(TooLarge, Config);
LOCPRIV_ERROR(ConfigError, Config);

#undef LOCPRIV_ERROR

}  // namespace locpriv
