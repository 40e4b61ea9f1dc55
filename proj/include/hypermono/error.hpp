#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypermono {

enum class ErrorKind {
  InvalidArgument,
  ParseError,
  NotGaloisStable,
  NotCyclotomicProduct,
  NotMonic,
  DegreeMismatch,
  EqualPolynomials,
  SharedEigenvalue,
  NotReflection,
  NoInvariantForm,
  AmbiguousForm,
  ZeroDifference,
  InternalInconsistency,
  ResonanceReductionFailed,
  IllConditioned,
  ClearanceViolated,
  ToleranceUnreachable,
  EigenvalueMismatch,
  ValidationFailed,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotGaloisStable: return "NotGaloisStable";
    case ErrorKind::NotCyclotomicProduct: return "NotCyclotomicProduct";
    case ErrorKind::NotMonic: return "NotMonic";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::EqualPolynomials: return "EqualPolynomials";
    case ErrorKind::SharedEigenvalue: return "SharedEigenvalue";
    case ErrorKind::NotReflection: return "NotReflection";
    case ErrorKind::NoInvariantForm: return "NoInvariantForm";
    case ErrorKind::AmbiguousForm: return "AmbiguousForm";
    case ErrorKind::ZeroDifference: return "ZeroDifference";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::ResonanceReductionFailed: return "ResonanceReductionFailed";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::ClearanceViolated: return "ClearanceViolated";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::EigenvalueMismatch: return "EigenvalueMismatch";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
  }
  return "Unknown";
}

/// Domain error raised by every module; `kind()` is the stable name the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace hypermono
