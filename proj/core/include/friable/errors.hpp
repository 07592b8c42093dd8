#pragma once

#include <stdexcept>
#include <string>

namespace friable {

/// Raised when a request would exceed a configured memory or work budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by modular inversion when gcd(n, q) > 1.
class NotInvertibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace friable
