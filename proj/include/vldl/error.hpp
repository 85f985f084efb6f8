#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vldl {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (files, words, formulas).
class InputError : public Error {
public:
  explicit InputError(const std::string& what) : Error(what) {}
  InputError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// Input that is well-formed but outside the domain of an operation,
/// e.g. a lasso whose period cannot be made well-matched for the oracle.
class UnsupportedError : public InputError {
public:
  using InputError::InputError;
};

/// A configured cap on states, vertices or configurations was exceeded.
class ResourceError : public Error {
public:
  ResourceError(const std::string& stage, const std::string& what)
      : Error(stage + ": " + what), stage_(stage) {}

  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

/// A regular tree that cannot be read back as a stack tree.
class MalformedWitnessError : public Error {
public:
  using Error::Error;
};

} // namespace vldl
