#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcont {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line, int column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// A zero coordinate was raised to a negative power.
class EvaluationError : public Error {
public:
    using Error::Error;
};

class UnsupportedDenominatorError : public Error {
public:
    UnsupportedDenominatorError(const std::string& what, std::size_t equation)
        : Error(what), equation_(equation) {}

    std::size_t equation() const noexcept { return equation_; }

private:
    std::size_t equation_;
};

class SingularMatrixError : public Error {
public:
    explicit SingularMatrixError(std::size_t pivot)
        : Error("matrix is singular to working precision at pivot " + std::to_string(pivot)),
          pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class InconsistentSystemError : public Error {
public:
    using Error::Error;
};

/// Raised by the square solver when the input should go through
/// numerical irreducible decomposition instead.
class NeedsDecompositionError : public Error {
public:
    using Error::Error;
};

class DegenerateLiftingError : public Error {
public:
    using Error::Error;
};

class HermiteOverflowError : public Error {
public:
    using Error::Error;
};

class InconclusiveError : public Error {
public:
    using Error::Error;
};

} // namespace hcont
