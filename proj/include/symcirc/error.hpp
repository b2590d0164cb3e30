#pragma once

#include <stdexcept>
#include <string>

namespace symcirc {

// Base class for every error raised by the library. Validation problems that
// are expected on user input (circuit diagnostics, base-graph checks) are
// returned as values instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class MissingVariable : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Raised when an internal consistency check fails (a construction produced a
// witness or isomorphism that does not verify).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace symcirc
