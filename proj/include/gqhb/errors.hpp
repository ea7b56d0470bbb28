// Exception hierarchy shared by all gqhb modules.
#pragma once

#include <stdexcept>
#include <string>

namespace gqhb {

// Root of all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad inputs: wrong shapes, out-of-domain parameters, unphysical states.
class validation_error : public error {
public:
    using error::error;
};

// Runtime numerical failures: solvers that did not converge, factorizations
// that broke down, truncations too small for the requested accuracy.
class numeric_error : public error {
public:
    using error::error;
};

class dimension_mismatch : public validation_error {
public:
    using validation_error::validation_error;
};

class non_symmetric : public validation_error {
public:
    using validation_error::validation_error;
};

class non_physical : public validation_error {
public:
    using validation_error::validation_error;
};

class non_positive_definite : public validation_error {
public:
    using validation_error::validation_error;
};

class domain_error : public validation_error {
public:
    using validation_error::validation_error;
};

class not_pure : public validation_error {
public:
    using validation_error::validation_error;
};

class invalid_spec : public validation_error {
public:
    using validation_error::validation_error;
};

class unsupported_pair : public validation_error {
public:
    using validation_error::validation_error;
};

class non_hermitian : public validation_error {
public:
    using validation_error::validation_error;
};

class parse_error : public validation_error {
public:
    using validation_error::validation_error;
};

class convergence_failure : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class factorization_failure : public numeric_error {
public:
    using numeric_error::numeric_error;
};

class truncation_too_small : public numeric_error {
public:
    using numeric_error::numeric_error;
};

// Filesystem failures on output paths (distinct CLI exit code).
class write_error : public error {
public:
    using error::error;
};

} // namespace gqhb
