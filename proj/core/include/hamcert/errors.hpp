#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hamcert {

/// Base of every error raised by the library. Callers that only need a
/// message can catch this; the subclasses carry structured context.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + message),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(std::string name)
      : Error("unknown variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class UnknownFunction : public Error {
 public:
  explicit UnknownFunction(std::string name)
      : Error("unknown function '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

/// Raised by expression evaluation: sqrt of a negative, division by zero,
/// or a non-finite result.
class DomainError : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(double best_value, double achieved_error)
      : Error("quadrature did not reach tolerance (value " + std::to_string(best_value) +
              ", error " + std::to_string(achieved_error) + ")"),
        best_value_(best_value),
        achieved_error_(achieved_error) {}
  double best_value() const noexcept { return best_value_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double best_value_;
  double achieved_error_;
};

class DegenerateConstant : public Error {
 public:
  using Error::Error;
};

class HintInconsistent : public Error {
 public:
  using Error::Error;
};

class HintMissing : public Error {
 public:
  using Error::Error;
};

class LadderViolation : public Error {
 public:
  using Error::Error;
};

class ParamError : public Error {
 public:
  using Error::Error;
};

class EnvelopeError : public Error {
 public:
  using Error::Error;
};

class Divergence : public Error {
 public:
  using Error::Error;
};

class ProblemFileError : public Error {
 public:
  ProblemFileError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace hamcert
