#pragma once

#include <stdexcept>
#include <string>

namespace qpwt {

/// A wavelet candidate whose shell sum diverges (nonzero mean).
struct NotAdmissibleError : std::domain_error {
    explicit NotAdmissibleError(const std::string& what) : std::domain_error(what) {}
};

/// Structurally valid input that is degenerate for the requested operation
/// (zero function where a nonzero one is required, vanishing convolution, ...).
struct DegenerateInputError : std::invalid_argument {
    explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// Scale/translation grid violates its invariants or does not cover the
/// support of the transform it is asked to carry.
struct GridError : std::domain_error {
    explicit GridError(const std::string& what) : std::domain_error(what) {}
};

/// Scalogram and wavelet do not belong together.
struct FingerprintMismatchError : std::domain_error {
    explicit FingerprintMismatchError(const std::string& what) : std::domain_error(what) {}
};

} // namespace qpwt
