#pragma once

#include <stdexcept>
#include <string>

namespace selmerstat {

struct invalid_modulus : std::invalid_argument {
    explicit invalid_modulus(const std::string& what) : std::invalid_argument(what) {}
};

struct precondition_error : std::invalid_argument {
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

struct hensel_failure : std::domain_error {
    explicit hensel_failure(const std::string& what) : std::domain_error(what) {}
};

struct singular_curve : std::domain_error {
    explicit singular_curve(const std::string& what) : std::domain_error(what) {}
};

struct bad_reduction : std::domain_error {
    explicit bad_reduction(const std::string& what) : std::domain_error(what) {}
};

struct invalid_discriminant : std::invalid_argument {
    explicit invalid_discriminant(const std::string& what) : std::invalid_argument(what) {}
};

// Raised instead of returning a value with fewer than one significant p-adic digit.
struct precision_exhausted : std::runtime_error {
    explicit precision_exhausted(const std::string& what) : std::runtime_error(what) {}
};

struct oracle_failure : std::runtime_error {
    explicit oracle_failure(const std::string& what) : std::runtime_error(what) {}
};

// A count obtained by two independent routes disagreed.
struct census_integrity_error : std::runtime_error {
    explicit census_integrity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace selmerstat
