#pragma once

#include <stdexcept>
#include <string>

namespace octshift {

// Error taxonomy mapped to CLI exit codes (see tools/octshift_main.cpp):
//   ConfigError -> 2, DataError -> 3, TrainingAbort -> 4, OrchestrationError -> 5.

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed files, failed validation, missing artifacts, IO failures.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite losses and other unrecoverable training states.
struct TrainingAbort : std::runtime_error {
  explicit TrainingAbort(const std::string& msg) : std::runtime_error(msg) {}
};

struct OrchestrationError : std::runtime_error {
  explicit OrchestrationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace octshift
