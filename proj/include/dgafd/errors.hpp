#pragma once

#include <stdexcept>
#include <string>

namespace dgafd {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateSample : public Error {
public:
    using Error::Error;
};

class TooFewSamples : public Error {
public:
    using Error::Error;
};

class BadWidth : public Error {
public:
    using Error::Error;
};

class InsufficientExtrema : public Error {
public:
    using Error::Error;
};

class SingleClassData : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class MissingBranchData : public Error {
public:
    using Error::Error;
};

class EmptyClass : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class UndefinedForEmptyClass : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(long line, const std::string& reason)
        : Error("parse error at line " + std::to_string(line) + ": " + reason), line(line), reason(reason) {}

    long line;
    std::string reason;
};

class EmptyFile : public Error {
public:
    using Error::Error;
};

class VersionMismatch : public Error {
public:
    using Error::Error;
};

class CorruptArtifact : public Error {
public:
    using Error::Error;
};

}  // namespace dgafd
