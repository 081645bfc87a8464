#pragma once

#include <stdexcept>
#include <string>

namespace fuglede {

/// Base of every error raised by the library. The CLI maps all of them to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotPrime : public Error {
public:
    using Error::Error;
};

class EqualPrimes : public Error {
public:
    using Error::Error;
};

class GroupTooLarge : public Error {
public:
    using Error::Error;
};

class SymmetryGroupTooLarge : public Error {
public:
    using Error::Error;
};

class GroupTooLargeForExhaustive : public Error {
public:
    using Error::Error;
};

class NotVanishing : public Error {
public:
    using Error::Error;
};

class NotASubgroup : public Error {
public:
    using Error::Error;
};

class NotATiling : public Error {
public:
    using Error::Error;
};

/// Raised by checked integer arithmetic; exact sums must never wrap.
class ArithmeticOverflow : public Error {
public:
    using Error::Error;
};

/// Malformed input. Syntax errors carry a 1-based position; schema errors report line 0.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(line == 0 ? what : what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DuplicateElement : public Error {
public:
    using Error::Error;
};

} // namespace fuglede
