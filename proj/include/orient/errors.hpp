#pragma once

#include <stdexcept>
#include <string>

namespace orient {

// Pair of directions too close to equality or antipodality: the pairwise
// kernels are undefined there.
class AntipodalOrEqualError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A common-lines datum that fails schema, uniqueness or completeness
// requirements. Carries the offending pair when known.
class MalformedDatumError : public std::runtime_error {
public:
    MalformedDatumError(const std::string& what, int i = -1, int j = -1)
        : std::runtime_error(what), i_(i), j_(j) {}
    int pair_i() const { return i_; }
    int pair_j() const { return j_; }

private:
    int i_;
    int j_;
};

// Intrinsic model dimension does not match what the operation requires.
class DimMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace orient
