#pragma once

#include <stdexcept>
#include <string>

namespace herding {

/// Failure category; the CLI maps each one onto a distinct exit code.
enum class ErrorKind { validation, solver, io };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parameter or input-data constraint violation.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

/// Root bracketing, convergence, quadrature or other numerical failure.
class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(ErrorKind::solver, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

} // namespace herding
