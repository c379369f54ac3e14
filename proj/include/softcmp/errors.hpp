#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace softcmp {

enum class Errc {
  EmptyFocalSet,
  MassSumViolation,
  UnknownLabel,
  SubnormalPossibility,
  MismatchedObjectCount,
  UnknownKind,
  EmptySet,
  BudgetExceeded,
  NotFuzzy,
  UnknownTNorm,
  BaseNotNormalized,
  OutOfRange,
  DegenerateData,
  ParseError,
  NonNumericFeature,
  SchemaError,
  ValidationError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptyFocalSet: return "EmptyFocalSet";
    case Errc::MassSumViolation: return "MassSumViolation";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::SubnormalPossibility: return "SubnormalPossibility";
    case Errc::MismatchedObjectCount: return "MismatchedObjectCount";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::EmptySet: return "EmptySet";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotFuzzy: return "NotFuzzy";
    case Errc::UnknownTNorm: return "UnknownTNorm";
    case Errc::BaseNotNormalized: return "BaseNotNormalized";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::ParseError: return "ParseError";
    case Errc::NonNumericFeature: return "NonNumericFeature";
    case Errc::SchemaError: return "SchemaError";
    case Errc::ValidationError: return "ValidationError";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Thrown when an exact enumeration would visit more items than allowed.
// Carries the offending count so callers can print it or pick a sample size.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(double requested, double budget, const std::string& what_counts)
      : Error(Errc::BudgetExceeded,
              what_counts + " = " + format_count(requested) + " exceeds budget " +
                  format_count(budget) + "; use the sampled mode instead"),
        requested_(requested),
        budget_(budget) {}

  double requested() const { return requested_; }
  double budget() const { return budget_; }

  static std::string format_count(double v) {
    if (v < 9.007e15) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.0f", v);
      return buf;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
  }

 private:
  double requested_;
  double budget_;
};

}  // namespace softcmp
