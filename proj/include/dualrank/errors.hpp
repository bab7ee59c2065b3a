#pragma once

#include <stdexcept>
#include <string>

namespace dualrank {

/// Malformed arguments: non-finite matrices, duplicate abscissae, bad chart specs.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A rank decision stayed ambiguous after every resample.
class NonGenericPoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every point of the probed leaf line is singular (focus polynomial vanishes identically).
class DegenerateLeaf : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The chosen base point is itself a focus, so the Jacobi matrix cannot be normalized there.
class SingularBasePoint : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Constructor preconditions on catalogue varieties (degenerate frames, coplanar curves, ...).
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace dualrank
