// common.hpp — shared aliases and error types.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace varpol {

using cplx = std::complex<double>;

// Raised when a config file is malformed or references missing inputs (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an iterative method fails to reach its tolerance (CLI exit code 3).
struct NonConvergence : std::runtime_error {
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an operation is asked to work outside its supported scope.
struct ScopeError : std::runtime_error {
    explicit ScopeError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace varpol
