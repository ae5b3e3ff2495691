#ifndef GHCOV_ERRORS_HPP
#define GHCOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ghcov {

/// Input outside the admissible domain (parameter-space violations,
/// precondition failures). CLI maps this to exit code 2.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that failed to reach its accuracy target (series
/// non-convergence, quadrature failure). CLI maps this to exit code 1.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ghcov

#endif
