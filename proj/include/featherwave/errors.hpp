#pragma once

#include <stdexcept>
#include <string>

namespace fw {

// Bad configuration values (CLI maps these to exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally invalid inputs: shape mismatches, out-of-range indices.
struct StructureError : std::runtime_error {
    explicit StructureError(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values where finite ones are required (CLI exit code 3).
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fw
