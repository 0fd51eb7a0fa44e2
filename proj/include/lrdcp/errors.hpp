#pragma once

#include <stdexcept>
#include <string>

namespace lrdcp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidLength : Error {
    using Error::Error;
};

// Circulant embedding produced an eigenvalue below -tolerance.
struct EmbeddingNotPsd : Error {
    using Error::Error;
};

struct UnsupportedOrder : Error {
    using Error::Error;
};

struct QuadratureNonConvergence : Error {
    using Error::Error;
};

struct MissingQuantile : Error {
    using Error::Error;
};

struct InconsistentNormalization : Error {
    using Error::Error;
};

// Unreadable or non-numeric series input.
struct InputError : Error {
    using Error::Error;
};

}  // namespace lrdcp
