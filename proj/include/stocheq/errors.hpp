#ifndef STOCHEQ_ERRORS_HPP
#define STOCHEQ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stocheq {

/// Parameter outside its admissible range (probabilities outside [0,1],
/// epsilon outside (0,1), row parameter sums above 1, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A ratio of minors whose denominator minor vanishes.
struct DivisionByZero : std::domain_error {
    using std::domain_error::domain_error;
};

/// Linear system with a rank deficiency larger than the expected one.
struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A node with no outgoing links; the walk matrix D^-1 A is undefined.
struct ZeroOutDegree : std::invalid_argument {
    explicit ZeroOutDegree(std::size_t node)  // 0-based
        : std::invalid_argument("node " + std::to_string(node + 1) + " has zero out-degree"), node(node) {}
    std::size_t node;
};

/// Raised when an internal consistency check fails. Indicates a bug.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace stocheq

#endif  // STOCHEQ_ERRORS_HPP
