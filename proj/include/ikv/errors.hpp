#pragma once
#include <stdexcept>
#include <string>

namespace ikv {

// Base for all library errors. CLI maps these to exit code 2 (bad input)
// or 1 (failed check) depending on where they surface.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegreeTooSmall : Error {
    explicit DegreeTooSmall(const std::string& msg) : Error(msg) {}
};

struct DegreeMismatch : Error {
    explicit DegreeMismatch(const std::string& msg) : Error(msg) {}
};

struct SocleDegreeMismatch : Error {
    explicit SocleDegreeMismatch(const std::string& msg) : Error(msg) {}
};

struct NotSmooth : Error {
    explicit NotSmooth(const std::string& msg) : Error(msg) {}
};

// Signals that a product that must land in the one-dimensional eta line
// did not. Always an implementation bug or a degenerate input; never
// silently ignored.
struct LambdaNotScalar : Error {
    explicit LambdaNotScalar(const std::string& msg) : Error(msg) {}
};

struct OrderOutOfRange : Error {
    explicit OrderOutOfRange(const std::string& msg) : Error(msg) {}
};

struct MalformedInput : Error {
    explicit MalformedInput(const std::string& msg) : Error(msg) {}
};

} // namespace ikv
