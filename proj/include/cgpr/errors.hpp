#pragma once

#include <stdexcept>
#include <string>

namespace cgpr {

// Base class for every library-specific failure. Type-invariant violations
// (bad dimensions at construction, out-of-range parameters) throw
// std::invalid_argument instead.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two operands do not share grid dimensions.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// The TV functional gradient is the zero field; no descent direction exists.
class ZeroGradient : public Error {
public:
    using Error::Error;
};

// Phantom support exceeds half of the computational window.
class NyquistViolation : public Error {
public:
    using Error::Error;
};

// Magnitude data is identically zero; noise scaling is undefined.
class AllZeroInput : public Error {
public:
    using Error::Error;
};

// Ground-truth field is identically zero; the error metric is undefined.
class ZeroTruth : public Error {
public:
    using Error::Error;
};

// Serialization failures.
class BadMagic : public Error {
public:
    using Error::Error;
};

class TruncatedPayload : public Error {
public:
    using Error::Error;
};

class UnknownKind : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

}  // namespace cgpr
