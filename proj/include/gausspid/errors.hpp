#pragma once

#include <stdexcept>
#include <string>

namespace gausspid {

/// Invalid user-supplied input: bad dimensions, indices out of range,
/// malformed files, unsatisfiable requests.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A matrix that had to be positive definite was not. Carries the index of
/// the first Cholesky pivot that failed (column in the matrix being
/// factorized), or -1 when no pivot applies.
class NumericalFailure : public std::runtime_error {
public:
    explicit NumericalFailure(const std::string& what, int pivot_index = -1)
        : std::runtime_error(what), pivot_index_(pivot_index) {}

    int pivot_index() const noexcept { return pivot_index_; }

private:
    int pivot_index_;
};

}  // namespace gausspid
