#pragma once

#include <stdexcept>
#include <string>

namespace latconv {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated operation precondition (wrong dimension, n = 0, bad parameter).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Allocation would exceed the configured memory cap.
class ResourceError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace latconv
