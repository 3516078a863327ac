#pragma once

#include <stdexcept>
#include <string>

namespace natdist {

// An enumeration or permutation space exceeds what the index arithmetic can
// represent (or what is worth enumerating). CLI exit code 3.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration, arguments, or preconditions. CLI exit code 1.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// File or filesystem failure. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// A sampling run produced no strings of the requested length.
class EmptySampleError : public std::runtime_error {
 public:
  explicit EmptySampleError(const std::string& what) : std::runtime_error(what) {}
};

// Correlation is undefined for the given input (zero variance).
class UndefinedCorrelationError : public std::domain_error {
 public:
  explicit UndefinedCorrelationError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace natdist
