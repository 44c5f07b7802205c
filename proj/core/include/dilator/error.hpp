#pragma once

#include <stdexcept>
#include <string>

namespace dilator {

// Broad classes; the command line tool maps them onto exit codes.
enum class ErrorClass { precondition, budget, parse };

class Error : public std::runtime_error {
public:
  Error(ErrorClass cls, std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), cls_(cls), kind_(std::move(kind)) {}
  ErrorClass error_class() const noexcept { return cls_; }
  const std::string& kind() const noexcept { return kind_; }

private:
  ErrorClass cls_;
  std::string kind_;
};

#define DILATOR_DEFINE_ERROR(Name, Cls)                                   \
  class Name : public Error {                                             \
  public:                                                                 \
    explicit Name(const std::string& what) : Error(Cls, #Name, what) {}   \
  };

DILATOR_DEFINE_ERROR(SlotMismatch, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(LabelNotInCarrier, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(ArityMismatch, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(NoConsistentFit, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(SupportViolation, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(NotAFlower, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(InvalidDendrogram, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(InvalidPredilator, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(NotLess, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(NotTrekkable, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(InconsistentSigma, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(IllegalMove, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(SelectorPartial, ErrorClass::precondition)
DILATOR_DEFINE_ERROR(BoundExceeded, ErrorClass::budget)
DILATOR_DEFINE_ERROR(BudgetExceeded, ErrorClass::budget)

#undef DILATOR_DEFINE_ERROR

class ParseError : public Error {
public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorClass::parse, "ParseError",
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace dilator
