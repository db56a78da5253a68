#pragma once

#include <stdexcept>
#include <string>

namespace covergap {

// Thrown when a caller violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a reduction step is requested whose hypotheses do not hold
// for the given system (wrong multiple count, valuation mismatch, ...).
class LemmaPreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an existence claim a reduction relies on fails in practice.
// Seeing this on a genuine covering system would disprove the reduction
// itself, so it is never swallowed.
class FalsificationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Thrown when the brute-force verifier is asked to scan a system whose
// modulus lcm exceeds its configured bound.
class OracleOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when the certified interval scan cannot make progress, e.g. a
// fresh anchor already has reciprocal sum >= 1.
class ScanFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Thrown when an exhaustive search is asked for an instance larger than
// its guard size.
class SearchSizeExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace covergap
