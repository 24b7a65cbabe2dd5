#pragma once

#include <stdexcept>
#include <string>

namespace fundsol {

// Base class for all domain errors thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateSymbol : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct DegreeError : Error {
  using Error::Error;
};
struct NonPositiveWidth : Error {
  using Error::Error;
};
struct NonPositiveScale : Error {
  using Error::Error;
};
struct OrderCapExceeded : Error {
  using Error::Error;
};
struct UnsupportedDimension : Error {
  using Error::Error;
};
struct HypothesisViolated : Error {
  using Error::Error;
};
struct MollifierTooWide : Error {
  using Error::Error;
};
struct OutsideSmoothWindow : Error {
  using Error::Error;
};
struct WindowTooSmall : Error {
  using Error::Error;
};
struct NonfiniteProfile : Error {
  using Error::Error;
};
struct CaseMismatch : Error {
  using Error::Error;
};
struct TailNotCertified : Error {
  using Error::Error;
};
struct NonintegrableAssembly : Error {
  using Error::Error;
};
struct OutsideConvergenceRegion : Error {
  using Error::Error;
};
struct IllConditionedFit : Error {
  using Error::Error;
};
struct PoleOrderExceeded : Error {
  using Error::Error;
};
struct NoConvergenceTrend : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace fundsol
