#pragma once

#include <stdexcept>
#include <string>

namespace waverom {

/// Base class for all waverom errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration, precondition violation, or inconsistent inputs.
/// Maps to CLI exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Cholesky pivot failure: the matrix handed to the factorization is not
/// positive definite. Carries the offending pivot index and value. In a
/// pipeline run this usually signals oversampling, noise on the transfer
/// data, or a sampling interval below the data accuracy.
/// Maps to CLI exit code 2.
class NotPositiveDefiniteError : public Error {
public:
    NotPositiveDefiniteError(int pivot_index, double pivot_value, const std::string& context = "")
        : Error((context.empty() ? std::string() : context + ": ") +
                "matrix not positive definite: pivot " + std::to_string(pivot_index) +
                " has value " + std::to_string(pivot_value)),
          pivot_index_(pivot_index),
          pivot_value_(pivot_value) {}

    int pivot_index() const { return pivot_index_; }
    double pivot_value() const { return pivot_value_; }

private:
    int pivot_index_;
    double pivot_value_;
};

/// File I/O failure; the message carries the offending path.
/// Maps to CLI exit code 3.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace waverom
