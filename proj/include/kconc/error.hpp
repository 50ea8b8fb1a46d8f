#pragma once

#include <stdexcept>
#include <string>

namespace kconc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid options, configuration values or API preconditions (CLI exit code 2).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed or unusable input data (CLI exit code 3).
class DataError : public Error {
public:
    using Error::Error;
};

/// A numerical precondition of a theorem or routine does not hold:
/// degenerate gaps, singular covariance, solver failure (CLI exit code 4).
class DegenerateError : public Error {
public:
    using Error::Error;
};

}  // namespace kconc
