#pragma once

#include <stdexcept>
#include <string>

namespace mwt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A configured limit was exceeded (for instance a derivative order above the maximum).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, double best_estimate, double err_estimate)
        : Error(what), best_estimate_(best_estimate), err_estimate_(err_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double err_estimate() const noexcept { return err_estimate_; }

private:
    double best_estimate_;
    double err_estimate_;
};

/// A moment was requested that does not exist for the declared growth class.
class MomentDivergenceError : public Error {
public:
    using Error::Error;
};

/// An expansion order exceeds what the moment sequence supports.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, int cap) : Error(what), cap_(cap) {}
    int cap() const noexcept { return cap_; }

private:
    int cap_;
};

/// Too few usable points for a log-log regression.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// The requested operation is not available for this input kind.
class UnsupportedInputError : public Error {
public:
    using Error::Error;
};

}  // namespace mwt
