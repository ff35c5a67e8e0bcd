#pragma once

#include <stdexcept>
#include <string>

namespace irmlab {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent inputs (dimension mismatches, bad predictors, ...).
class StructuralError : public Error {
public:
    explicit StructuralError(const std::string& what) : Error(what) {}
};

/// An instance exceeds an enumeration cap.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& what) : Error(what) {}
};

/// Positioned error while reading a structured-text document.
class ParseError : public Error {
public:
    ParseError(const std::string& origin, int line, const std::string& what)
        : Error(origin + ":" + std::to_string(line) + ": " + what),
          origin_(origin),
          line_(line) {}

    const std::string& origin() const { return origin_; }
    int line() const { return line_; }

private:
    std::string origin_;
    int line_;
};

} // namespace irmlab
