#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace probekit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input. `line()` is 1-based, 0 when not tied to a line.
class InputError : public Error {
 public:
  InputError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A dataset control could not be satisfied. `control()` names it
/// ("balance", "disjointness", "decorrelation", ...).
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string control, const std::string& what);
  const std::string& control() const noexcept { return control_; }

 private:
  std::string control_;
};

/// Shape or argument mismatch in numeric code.
class DimensionError : public Error {
 public:
  using Error::Error;
};

}  // namespace probekit
