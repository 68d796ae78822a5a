#pragma once

#include <stdexcept>
#include <string>

namespace ltomo {

// Bad input value or shape (degree out of range, n0 too small, ...).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Parameter combination outside what the closed forms cover.
struct UnsupportedParameters : std::domain_error {
  using std::domain_error::domain_error;
};

// Point or edge outside the region where the geometry is defined.
struct GeometryError : std::domain_error {
  using std::domain_error::domain_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed configuration; line 0 means the whole file.
struct ConfigError : std::invalid_argument {
  ConfigError(const std::string& file, int line, const std::string& field, const std::string& msg)
      : std::invalid_argument(file + (line > 0 ? ":" + std::to_string(line) : std::string()) +
                              (field.empty() ? std::string() : ": " + field) + ": " + msg),
        line(line),
        field(field) {}
  int line;
  std::string field;
};

}  // namespace ltomo
