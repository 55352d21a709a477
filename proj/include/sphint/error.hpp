#pragma once

#include <stdexcept>
#include <string>

namespace sphint {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Adaptive integration exhausted its panel budget above tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double estimate, double error_estimate)
      : Error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const noexcept { return estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class EmptyInput : public Error {
 public:
  using Error::Error;
};

class InsufficientGrid : public Error {
 public:
  using Error::Error;
};

/// The dimension search hit its ceiling; carries the best coefficient seen.
class SearchExhausted : public Error {
 public:
  SearchExhausted(const std::string& what, double best_coefficient)
      : Error(what), best_coefficient_(best_coefficient) {}

  double best_coefficient() const noexcept { return best_coefficient_; }

 private:
  double best_coefficient_;
};

}  // namespace sphint
