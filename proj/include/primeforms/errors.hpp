#pragma once

#include <stdexcept>
#include <string>

namespace primeforms {

/// A witness search would need a bound whose arithmetic leaves the 64-bit
/// budget. Distinct from "no representation".
struct bound_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An exhaustive scan was asked to run past its configured budget.
struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The prime lies outside the range where a criterion makes a claim.
struct out_of_domain : std::domain_error {
    using std::domain_error::domain_error;
};

/// No reduction is on file for the requested multiplier.
struct not_applicable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace primeforms
