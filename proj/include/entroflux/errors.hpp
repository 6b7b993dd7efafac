// errors.hpp: exception types raised by the entroflux library.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entroflux {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures
struct SingularMatrix : Error {
    using Error::Error;
};
struct Unstable : Error {
    using Error::Error;
};
struct DegenerateDiffusion : Error {
    using Error::Error;
};
struct NonPositiveDeterminant : Error {
    using Error::Error;
};
struct ComplexSymplecticEigenvalue : Error {
    using Error::Error;
};
struct Diverged : Error {
    using Error::Error;
};

// Optomechanics front-end
struct NoPhysicalRoot : Error {
    using Error::Error;
};
struct UnstableBranch : Error {
    using Error::Error;
};

// Sweep / CLI surface
struct ConfigError : Error {
    ConfigError(std::size_t line, std::string key, const std::string& what)
        : Error("line " + std::to_string(line) + (key.empty() ? "" : " (" + key + ")") + ": " + what),
          line_(line), key_(std::move(key)) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    std::size_t line_;
    std::string key_;
};
struct InsufficientData : Error {
    using Error::Error;
};
struct IoError : Error {
    using Error::Error;
};

}  // namespace entroflux
