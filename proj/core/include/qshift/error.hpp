#pragma once

#include <stdexcept>
#include <string>

namespace qshift {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain (q <= 0, non-finite argument, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation applied to a potential family it does not support.
class WrongFamilyError : public Error {
public:
    using Error::Error;
};

/// Requested level index does not correspond to a bound state.
class NoSuchLevelError : public Error {
public:
    using Error::Error;
};

class NotNormalizableError : public Error {
public:
    using Error::Error;
};

/// Pochhammer symbol of the lower hypergeometric parameter vanishes.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Generalized Morse translation requires V1/V2 > 0.
class NoRealShiftError : public Error {
public:
    using Error::Error;
};

/// A CanonicalMap was paired with a spec it was not derived from.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// No candidate reading of the closed-form spectrum matched the oracle.
class PinningError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input (spec strings, numbers, command-line tokens).
class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace qshift
