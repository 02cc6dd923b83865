#pragma once

#include <stdexcept>
#include <string>

namespace gridloc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed config, file, or argument values.
struct ValidationError : Error {
    using Error::Error;
};

// Unknown anchor id or preset name.
struct LookupError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of an operation (d <= 0, degenerate cell).
struct DomainError : Error {
    using Error::Error;
};

// Cell index outside the grid.
struct BoundsError : Error {
    using Error::Error;
};

// Point outside the deployed region.
struct OutOfRegionError : Error {
    using Error::Error;
};

// Window with no samples / no anchors.
struct EmptyWindowError : Error {
    using Error::Error;
};

// Fewer than four anchors heard; the caller is expected to skip the window.
struct InsufficientAnchorsError : Error {
    using Error::Error;
};

// Matrix / lattice dimension mismatch.
struct ShapeError : Error {
    using Error::Error;
};

}  // namespace gridloc
