#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctd {

/// Error taxonomy shared by the library and the command-line tool.
/// The enum value doubles as the process exit code for that class.
enum class ErrorClass : int {
  argument = 1,
  shape = 2,
  empty_input = 3,
  parse = 4,
  metric = 5,
  oracle = 6,
  io = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}

  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

struct ArgumentError : Error {
  explicit ArgumentError(const std::string& what)
      : Error(ErrorClass::argument, what) {}
};

struct ShapeError : Error {
  explicit ShapeError(const std::string& what)
      : Error(ErrorClass::shape, what) {}
};

struct EmptyInputError : Error {
  explicit EmptyInputError(const std::string& what)
      : Error(ErrorClass::empty_input, what) {}
};

/// Carries the 1-based line number of the offending input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(ErrorClass::parse,
              "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct MetricError : Error {
  explicit MetricError(const std::string& what)
      : Error(ErrorClass::metric, what) {}
};

struct OracleError : Error {
  explicit OracleError(const std::string& what)
      : Error(ErrorClass::oracle, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorClass::io, what) {}
};

}  // namespace ctd
