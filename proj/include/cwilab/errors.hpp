#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cwilab {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Paired inputs with incompatible lengths (predictions vs gold, matrix vs dataset).
class ShapeError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// Invalid caller-supplied configuration: bad selection, bad interval, bad rates.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Semantically invalid data, e.g. annotator counts required but absent.
class DataError : public Error {
 public:
  using Error::Error;
};

// Malformed input file. Always carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Input exceeds a guard such as the exhaustive-search system cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cwilab
