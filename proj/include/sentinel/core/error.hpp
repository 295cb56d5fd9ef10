#pragma once

#include <stdexcept>
#include <string>

namespace sentinel {

/// Runtime failures inside a pipeline (bad frame, detector fault, ...).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration or input files. Maps to CLI exit code 2.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

/// File I/O and codec failures.
class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace sentinel
