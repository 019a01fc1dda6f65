#ifndef LONESIEVE_ERROR_HPP
#define LONESIEVE_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lonesieve {

enum class ErrorKind {
  InvalidInput,
  NonPrimeModulus,
  DegreeOutOfRange,
  EvenPrime,
  LeadingCoefficientVanishes,
  SearchExhausted,
  RamifiedPrime,
  IncompatibleFields,
  CompositeLevel,
  BadReduction,
  DenominatorClash,
  EnumerationTooLarge,
  NotAnAutomorphism,
  NotAnInvolution,
  PrecisionOverflow,
  FormDivisibleByCurve,
  BezoutMismatch,
  DegreeMismatch,
  AuxiliaryDegreeOverflow,
  SearchSpaceTooLarge,
  MultipleMatches,
  RamifiedCoordinateField,
  UnknownLabel,
  InvolutionUnstableCertificates,
  TorsionOrderMismatch,
  MixedCurves,
  EmptyReportList,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NonPrimeModulus: return "NonPrimeModulus";
    case ErrorKind::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorKind::EvenPrime: return "EvenPrime";
    case ErrorKind::LeadingCoefficientVanishes: return "LeadingCoefficientVanishes";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::IncompatibleFields: return "IncompatibleFields";
    case ErrorKind::CompositeLevel: return "CompositeLevel";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::DenominatorClash: return "DenominatorClash";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::NotAnInvolution: return "NotAnInvolution";
    case ErrorKind::PrecisionOverflow: return "PrecisionOverflow";
    case ErrorKind::FormDivisibleByCurve: return "FormDivisibleByCurve";
    case ErrorKind::BezoutMismatch: return "BezoutMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::AuxiliaryDegreeOverflow: return "AuxiliaryDegreeOverflow";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::MultipleMatches: return "MultipleMatches";
    case ErrorKind::RamifiedCoordinateField: return "RamifiedCoordinateField";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::InvolutionUnstableCertificates: return "InvolutionUnstableCertificates";
    case ErrorKind::TorsionOrderMismatch: return "TorsionOrderMismatch";
    case ErrorKind::MixedCurves: return "MixedCurves";
    case ErrorKind::EmptyReportList: return "EmptyReportList";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Invariant violations that abort a run (exit code 3 in the CLI).
  bool is_internal() const noexcept {
    return kind_ == ErrorKind::MultipleMatches || kind_ == ErrorKind::BezoutMismatch;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace lonesieve

#endif  // LONESIEVE_ERROR_HPP
