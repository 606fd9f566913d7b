#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

/// Numerical failure: non-finite integrand, non-physical matrix, ...
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Fock truncation too small for the requested trace-deficit tolerance.
class CutoffError : public NumericalError {
public:
    CutoffError(const std::string& what, int suggested)
        : NumericalError(what), suggested_cutoff(suggested) {}

    int suggested_cutoff;
};

}  // namespace cvqkd
