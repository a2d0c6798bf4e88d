// Error types shared across the library. The CLI maps them to exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace nfvsim {

// Invalid configuration, scheme file, or argument (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A size guard for an exact algorithm was exceeded (CLI exit code 3).
struct SizeError : std::runtime_error {
    explicit SizeError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failure while reading or writing artifacts (CLI exit code 4).
struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nfvsim
