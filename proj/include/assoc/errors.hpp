#pragma once

#include <stdexcept>

namespace assoc {

/// A configured work budget (ranks, evaluations, brute-force lengths) would
/// be exceeded.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search that only terminates under a contract (e.g. an unbounded g) hit
/// its ceiling.
class NonTerminationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A procedure declined an operation that fails its declared preconditions.
class RefusalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace assoc
