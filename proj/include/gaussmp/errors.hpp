#pragma once

#include <stdexcept>
#include <string>

namespace gaussmp {

// Base class for all library errors. The CLI maps any Error (and any
// std::exception) to exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix/vector size does not match the declared mode count or block grid.
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// Two objects carry different quadrature-ordering tags.
struct OrderingMismatchError : Error {
    explicit OrderingMismatchError(const std::string& what) : Error(what) {}
};

// A covariance matrix failed the uncertainty-relation check where a
// physical state is required.
struct UnphysicalStateError : Error {
    explicit UnphysicalStateError(const std::string& what) : Error(what) {}
};

// Exactly coinciding eigenvalues make the pairwise log term singular.
struct DegenerateSpectrumError : Error {
    explicit DegenerateSpectrumError(const std::string& what) : Error(what) {}
};

}  // namespace gaussmp
