#pragma once

#include <stdexcept>
#include <string>

namespace ava {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or unreadable input data. CLI exit code 2.
class InputError : public Error {
public:
  using Error::Error;
};

// Invalid configuration or synthesis spec. CLI exit code 3.
class ConfigError : public Error {
public:
  using Error::Error;
};

class IoError : public InputError {
public:
  using InputError::InputError;
};

// A record that violates the file schema or a type invariant.
class SchemaError : public InputError {
public:
  SchemaError(std::size_t line, const std::string& field, const std::string& msg)
      : InputError("line " + std::to_string(line) + ", field '" + field + "': " + msg),
        line_(line),
        field_(field) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

private:
  std::size_t line_;
  std::string field_;
};

// Frame index outside [1, T].
class RangeError : public InputError {
public:
  RangeError(std::size_t line, int frame, int frame_count)
      : InputError("line " + std::to_string(line) + ": frame " + std::to_string(frame) +
                   " outside [1, " + std::to_string(frame_count) + "]"),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

// A ground-truth record lacks the box selected by EvalConfig::target.
class TargetMissing : public InputError {
public:
  using InputError::InputError;
};

class EmptyGt : public InputError {
public:
  using InputError::InputError;
};

class EmptySeries : public InputError {
public:
  using InputError::InputError;
};

class EmptyInput : public InputError {
public:
  using InputError::InputError;
};

}  // namespace ava
