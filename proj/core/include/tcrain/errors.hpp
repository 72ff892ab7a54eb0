#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcrain {

/// Malformed input text. The message always ends with "at line N".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(message + " at line " + std::to_string(line)), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Two rasters that must share georeferencing do not.
class GeoreferenceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A day whose labeling produced no component to attribute to the cyclone.
class NoClusterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tcrain
