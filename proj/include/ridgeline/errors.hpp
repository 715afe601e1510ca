#pragma once

#include <stdexcept>
#include <string>

namespace ridgeline {

/// Bad configuration or command-line usage. CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or missing input data. CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Broken internal invariant (pipeline wiring bug). CLI exit code 3.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace ridgeline
