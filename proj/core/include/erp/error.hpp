#pragma once

#include <stdexcept>
#include <string>

namespace erp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Root finder was handed an interval whose endpoint values share a sign.
class NoBracket : public Error {
public:
    using Error::Error;
};

/// An integrand, objective or grid value evaluated to NaN or infinity.
class NonFinite : public Error {
public:
    using Error::Error;
};

/// The exponential risk function was asked to evaluate an argument that
/// would overflow (> 700).
class Unstable : public Error {
public:
    using Error::Error;
};

/// Payoff kind not supported by the requested operation.
class UnsupportedPayoff : public Error {
public:
    using Error::Error;
};

/// Invalid configuration (grid, simulation, boundary preset, CLI input).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace erp
