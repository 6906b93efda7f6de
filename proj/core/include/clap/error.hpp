#pragma once

#include <stdexcept>
#include <string>

namespace clap {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid argument or shape mismatch at an operation boundary.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// NaN/Inf or other numeric invalidity in an input.
class NumericError : public Error {
 public:
  using Error::Error;
};

// File system / encoding failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Dataset layout or data contract violations (e.g. abnormal sample in a
// training split).
class DataError : public Error {
 public:
  using Error::Error;
};

// Attention backend unavailable or failed.
class BackendError : public Error {
 public:
  using Error::Error;
};

// Evaluation cannot proceed (e.g. single-class test set).
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace clap
