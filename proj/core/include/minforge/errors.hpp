#pragma once

#include <stdexcept>
#include <string>

namespace minforge {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnknownComponent : public Error {
public:
    using Error::Error;
};

class UnknownPort : public Error {
public:
    using Error::Error;
};

class InvalidCircuit : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class UnsupportedVersion : public Error {
public:
    using Error::Error;
};

class SinkError : public Error {
public:
    using Error::Error;
};

class InvalidSize : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidPath : public Error {
public:
    using Error::Error;
};

class MismatchedEndpoints : public Error {
public:
    using Error::Error;
};

class SameEndpoint : public Error {
public:
    using Error::Error;
};

class NoPath : public Error {
public:
    using Error::Error;
};

class SessionClosed : public Error {
public:
    using Error::Error;
};

class PastEnd : public Error {
public:
    using Error::Error;
};

} // namespace minforge
