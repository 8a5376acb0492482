#pragma once

#include <stdexcept>
#include <string>

namespace esp {

// Bad arguments or inputs violating a documented precondition.
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

// Matrix expected to be positive semidefinite has an eigenvalue below -psd_tol.
class NotPsdError : public std::runtime_error {
 public:
  explicit NotPsdError(const std::string& what) : std::runtime_error(what) {}
};

// Theoretical bound evaluation with lambda_k == lambda_{k+1}.
class DegenerateGapError : public std::runtime_error {
 public:
  explicit DegenerateGapError(const std::string& what) : std::runtime_error(what) {}
};

// Least-squares fit requested on degenerate abscissae.
class UndefinedFitError : public std::runtime_error {
 public:
  explicit UndefinedFitError(const std::string& what) : std::runtime_error(what) {}
};

// Config file / override parse and validation failures.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Unreachable internal states (e.g. a non-bracketing bisection).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace esp
