#pragma once

#include <stdexcept>
#include <string>

namespace semisum {

/// Base class for all semisum errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Position outside the domain of a potential.
class domain_error : public error {
public:
    using error::error;
};

/// Invalid argument (bad derivative order, bad precision request, ...).
class argument_error : public error {
public:
    using error::error;
};

/// Malformed potential spec string or CLI usage problem.
class parse_error : public error {
public:
    using error::error;
};

/// Requested level does not exist as a bound state.
class unbound_level_error : public error {
public:
    using error::error;
};

/// No closed-form eigenvalue formula for this potential.
class no_closed_form_error : public error {
public:
    using error::error;
};

/// Energy below the potential infimum: empty classically allowed region.
class no_allowed_region_error : public error {
public:
    using error::error;
};

/// A computation failed to reach its requested precision.
class precision_failure_error : public error {
public:
    using error::error;
};

/// Operation not supported for this potential / order combination.
class not_supported_error : public error {
public:
    using error::error;
};

/// Self-consistent normalization could not be satisfied.
class normalization_failure_error : public error {
public:
    using error::error;
};

} // namespace semisum
