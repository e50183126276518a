#pragma once

#include <stdexcept>
#include <string>

namespace quadbox {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IndexOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateBox : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NegativeVolume : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateFace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EarClippingFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateTriangle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteMoment : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownShape : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegreeExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised by build_rule for degrees beyond the supported cap (n > 30).
struct DegreeCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace quadbox
