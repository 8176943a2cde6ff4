#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cupset {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotUnitaryError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDimensionError : public Error {
 public:
  using Error::Error;
};

class EmptyDataError : public Error {
 public:
  using Error::Error;
};

// Raised when a decay fit cannot be carried out; keeps the raw data so callers
// can log or re-fit it.
class FitError : public Error {
 public:
  FitError(const std::string& what, std::vector<double> xs, std::vector<double> ys)
      : Error(what), xs_(std::move(xs)), ys_(std::move(ys)) {}

  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
};

}  // namespace cupset
