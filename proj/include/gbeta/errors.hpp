#pragma once

#include <stdexcept>
#include <string>

namespace gbeta {

// Root of every library error. Each subclass names one failure contract so
// callers (and the CLI exit-code mapping) can dispatch on type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// The map is only defined for non-integer slopes.
class NonIntegerRequired : public Error {
public:
    using Error::Error;
};

class UnresolvedOrbit : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

// A constructor's self-check failed. Never swallowed.
class ConstructionFailed : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class NotAdmissible : public Error {
public:
    using Error::Error;
};

class NoSignChange : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace gbeta
