#pragma once

#include <stdexcept>
#include <string>

namespace contactsplit {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MismatchedInterfaces : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoProjection : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CycleDetected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaxOuterIterations : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoKKTPoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroReference : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InsufficientTrace : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration / input-file parse failure carrying a line number (0 = whole file).
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(const std::string& msg, int line_ = 0)
        : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
};

} // namespace contactsplit
