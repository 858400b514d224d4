#pragma once

#include <stdexcept>
#include <string>

namespace vmbandit {

// Bad parameters, unparsable specifiers, schema violations. CLI exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range values in data being read or aggregated.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem-level failures. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vmbandit
