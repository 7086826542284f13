// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace homstruct {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// -- algebra layer -----------------------------------------------------------

struct AlgebraMismatch : Error {
    using Error::Error;
};
struct ClosureViolation : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct NonConvergence : Error {
    using Error::Error;
};

// -- reductive layer ---------------------------------------------------------

struct NoComplement : Error {
    using Error::Error;
};
struct NotSubalgebra : Error {
    using Error::Error;
};
struct DegenerateSystem : Error {
    using Error::Error;
};
struct NotReductive : Error {
    using Error::Error;
};
struct ActionUndefined : Error {
    using Error::Error;
};

// -- geometry layer ----------------------------------------------------------

struct OutsideDomain : Error {
    using Error::Error;
};
struct SingularMetric : Error {
    using Error::Error;
};
struct NotProductMetric : Error {
    using Error::Error;
};
struct LabelMismatch : Error {
    using Error::Error;
};
struct FrameMismatch : Error {
    using Error::Error;
};

} // namespace homstruct
