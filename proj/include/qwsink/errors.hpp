#pragma once

#include <stdexcept>
#include <string>

namespace qwsink {

/// Requested operation is outside the regime it is defined for
/// (e.g. pole quantities at eta <= 1, weak-coupling branch at eta > 1).
struct RegimeError : std::domain_error {
    explicit RegimeError(const std::string& what) : std::domain_error(what) {}
};

/// The two branch roots coincide (band edge), so no decaying branch exists.
struct DegenerateBranchError : std::domain_error {
    explicit DegenerateBranchError(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation requested at (or numerically indistinguishable from) the
/// boundary resonance pole.
struct PoleEvaluationError : std::domain_error {
    explicit PoleEvaluationError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative scheme (series, quadrature, step control) failed to reach
/// its target tolerance within its budget.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A finite lattice used as a stand-in for the half line was too small:
/// amplitude reached the far wall above the allowed level.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// An internal cross-check failed (a quantity that must be real came out
/// complex, a norm grew under lossy evolution, ...).
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qwsink
