#pragma once

#include <stdexcept>
#include <string>

namespace bsched {

/// Base class for every error the library raises on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad argument values, dimension mismatches, violated preconditions.
struct domain_error : error {
    using error::error;
};

/// A desk-scale bound was exceeded (search space, combination count, overflow guard).
struct capacity_error : error {
    using error::error;
};

/// Input text does not match the expected file schema (distinct from value
/// validation so callers can map it to an I/O-class failure).
struct schema_error : error {
    using error::error;
};

/// Input violates a modelling assumption (e.g. influence matrix top eigenvalue != 1).
struct model_error : error {
    using error::error;
};

/// An iterative method failed to converge within its budget.
struct numeric_error : error {
    using error::error;
};

/// A popularity trace is constant: alpha = 0 and the decay rate is undefined.
struct degenerate_trace_error : domain_error {
    using domain_error::domain_error;
};

/// Fewer than two usable samples survive filtering; no slope can be fit.
struct insufficient_data_error : domain_error {
    using domain_error::domain_error;
};

} // namespace bsched
