#pragma once

#include "semisum/errors.hpp"

namespace semisum {

/// Precision request for the high-precision oracle paths. working_digits must
/// leave at least 8 guard digits above the certified target.
struct PrecisionConfig {
    int working_digits = 24;
    int target_digits = 16;
    int max_iterations = 60;

    void validate() const {
        if (target_digits < 1) throw argument_error("target_digits must be positive");
        if (working_digits < target_digits + 8)
            throw argument_error("working_digits must be at least target_digits + 8");
        if (max_iterations < 1) throw argument_error("max_iterations must be positive");
    }

    static PrecisionConfig for_digits(int target) {
        PrecisionConfig cfg;
        cfg.target_digits = target;
        cfg.working_digits = target + 8;
        return cfg;
    }
};

} // namespace semisum
