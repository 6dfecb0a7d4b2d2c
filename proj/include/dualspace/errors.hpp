#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualspace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
  using Error::Error;
};
class SideError : public Error {
  using Error::Error;
};
class ParameterError : public Error {
  using Error::Error;
};
class AccuracyError : public Error {
  using Error::Error;
};
class DegenerateKernelError : public Error {
  using Error::Error;
};
class DivergentIntegralError : public Error {
  using Error::Error;
};
class SizeError : public Error {
  using Error::Error;
};
class ParityError : public Error {
  using Error::Error;
};
class IntegrationError : public Error {
  using Error::Error;
};
class DegenerateSteadyStateError : public Error {
  using Error::Error;
};
class ConfigError : public Error {
  using Error::Error;
};
class ModelError : public Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace dualspace
