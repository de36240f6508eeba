#pragma once

#include <stdexcept>
#include <string>

namespace secretscan {

// Base for every error the toolkit raises. Callers that only need a message
// catch this; the subclasses exist so the CLI and service can map failures to
// exit codes and HTTP statuses.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input data: bad CSV row, bad JSON line, invalid UTF-8.
class ParseError : public Error {
public:
    using Error::Error;
};

// A value violates a documented precondition or invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Remote classifier or code-hosting API misbehaved.
class RemoteError : public Error {
public:
    using Error::Error;
};

}  // namespace secretscan
