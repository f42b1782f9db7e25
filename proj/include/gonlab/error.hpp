#pragma once

#include <stdexcept>
#include <string>

namespace gonlab {

// Base class for every failure reported by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidGraph : public Error {
public:
    using Error::Error;
};

class InvalidDivisor : public Error {
public:
    using Error::Error;
};

// A divisor (or enumeration support) does not sit on the lattice of the
// chosen subdivision.
class NotLatticeSupported : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class InvalidFunction : public Error {
public:
    using Error::Error;
};

class InvalidMorphism : public Error {
public:
    using Error::Error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace gonlab
