#pragma once

#include <stdexcept>
#include <string>

namespace khc {

/// Coarse classification of failures; the CLI maps each category to an exit code.
enum class ErrorCategory {
  Usage,      // bad request or unsupported combination
  Falsifier,  // an internal consistency check of the theory failed
  Budget,     // an enumeration cap was hit
  Schema,     // malformed input data
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, std::string kind, const std::string& what)
      : std::runtime_error(what), category_(category), kind_(std::move(kind)) {}

  ErrorCategory category() const noexcept { return category_; }
  /// Stable machine-readable name, e.g. "Lemma54Violation".
  const std::string& kind() const noexcept { return kind_; }

 private:
  ErrorCategory category_;
  std::string kind_;
};

#define KHC_DEFINE_ERROR(Name, Category)                         \
  class Name : public Error {                                   \
   public:                                                      \
    explicit Name(const std::string& what)                      \
        : Error(ErrorCategory::Category, #Name, what) {}        \
  };

KHC_DEFINE_ERROR(DivisionByZero, Usage)
KHC_DEFINE_ERROR(InvalidType, Usage)
KHC_DEFINE_ERROR(UnsupportedE8, Usage)
KHC_DEFINE_ERROR(NotInvertible, Schema)
KHC_DEFINE_ERROR(NotNormal, Usage)
KHC_DEFINE_ERROR(NotAutomorphism, Schema)
KHC_DEFINE_ERROR(NonRationalParameter, Usage)
KHC_DEFINE_ERROR(SchemaError, Schema)
KHC_DEFINE_ERROR(BadHomomorphism, Schema)
KHC_DEFINE_ERROR(ClosureBudgetExceeded, Budget)
KHC_DEFINE_ERROR(WeylBudgetExceeded, Budget)
KHC_DEFINE_ERROR(CharacterBudgetExceeded, Budget)
KHC_DEFINE_ERROR(McKayMismatch, Falsifier)
KHC_DEFINE_ERROR(BijectionFailure, Falsifier)
KHC_DEFINE_ERROR(Lemma54Violation, Falsifier)
KHC_DEFINE_ERROR(NoUniqueMinimal, Falsifier)
KHC_DEFINE_ERROR(TypeIdFailure, Falsifier)
KHC_DEFINE_ERROR(InternalError, Falsifier)

#undef KHC_DEFINE_ERROR

}  // namespace khc
