#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bindweaver {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; zero means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Well-formed input that breaks a structural rule (unknown key, bad kind,
// violated invariant, duplicate entry).
class SchemaError : public Error {
public:
    using Error::Error;
};

// A name that should refer to something known does not.
class ResolutionError : public Error {
public:
    ResolutionError(const std::string& what, std::string name);

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

}  // namespace bindweaver
