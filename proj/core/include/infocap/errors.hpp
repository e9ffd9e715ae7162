#pragma once

#include <stdexcept>
#include <string>

namespace infocap {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, shapes or configuration. Maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values or values outside a function's domain.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An operation invoked in the wrong order (e.g. backward before forward).
class StateError : public Error {
 public:
  using Error::Error;
};

/// Training loss became non-finite or exceeded the abort threshold.
/// Maps to exit code 3.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& what, long iteration, std::string tag)
      : NumericError(what), iteration_(iteration), tag_(std::move(tag)) {}

  long iteration() const noexcept { return iteration_; }
  const std::string& tag() const noexcept { return tag_; }

 private:
  long iteration_;
  std::string tag_;
};

}  // namespace infocap
