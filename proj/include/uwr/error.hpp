#pragma once

#include <stdexcept>
#include <string>

namespace uwr {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field shapes disagree, or an operation was given an empty field.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter violates its documented range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A solver update produced a non-finite value.
class DivergenceError : public Error {
 public:
  DivergenceError(std::string update, int iteration)
      : Error("solver diverged in update_" + update + " at iteration " +
              std::to_string(iteration)),
        update_(std::move(update)),
        iteration_(iteration) {}

  const std::string& update() const { return update_; }
  int iteration() const { return iteration_; }

 private:
  std::string update_;
  int iteration_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// File exists but is not a PNG or JPEG image.
class FormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A batch directory holds no PNG or JPEG files.
class EmptyBatchError : public Error {
 public:
  using Error::Error;
};

}  // namespace uwr
