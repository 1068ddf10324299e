#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "predpower/errors.hpp"

namespace predpower::detail {

inline void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ValidationError(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
    }
}

inline void require_scale(double scale) {
    if (scale == 0.0 || !std::isfinite(scale)) {
        throw ValidationError("scale C must be finite and nonzero");
    }
}

inline void require_positive(std::int64_t value, const char* what) {
    if (value < 1) {
        throw ValidationError(std::string(what) + " must be >= 1, got " + std::to_string(value));
    }
}

}  // namespace predpower::detail
