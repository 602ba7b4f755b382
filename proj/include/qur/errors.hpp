#pragma once

#include <stdexcept>

namespace qur {

// Base class for every validation failure raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A direction vector with norm below 1e-12 cannot define an observable.
struct ZeroDirection : Error {
    using Error::Error;
};

// A Bloch vector with |r| > 1 + 1e-12 is not a quantum state.
struct NotAState : Error {
    using Error::Error;
};

// A scalar argument lies outside its documented domain.
struct DomainError : Error {
    using Error::Error;
};

// Containers passed together do not have matching sizes.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Sign-assignment search is capped at 20 observables (2^19 candidates).
struct TooManyObservables : Error {
    using Error::Error;
};

// Pair constructions need non-parallel directions (|a.b| < 1 - 1e-12).
struct ParallelObservables : Error {
    using Error::Error;
};

// The requested expectation tuple is not achievable by any state.
struct NotRealizable : Error {
    using Error::Error;
};

// Triple constructions need linearly independent directions (V^2 > 1e-12).
struct DegenerateTriple : Error {
    using Error::Error;
};

// A POVM whose direction part vanishes carries no measurement information.
struct TrivialObservable : Error {
    using Error::Error;
};

// The relation id is not in the certification catalog.
struct UnknownRelation : Error {
    using Error::Error;
};

// The operation is defined for two-observable sets only.
struct UnsupportedSetSize : Error {
    using Error::Error;
};

}  // namespace qur
