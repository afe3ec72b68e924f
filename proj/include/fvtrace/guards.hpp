#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fvtrace {

struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumeration guards for the exhaustive operations. Each limit is a hard
/// default from the operation contracts; the multiplier is the CLI's
/// --unsafe-guard escape hatch.
struct Guards {
    double multiplier = 1.0;

    static constexpr double kIdealOracle = 4096.0;        // 2^12 elements
    static constexpr double kFunctionalSearch = 1048576.0;  // 2^20 functionals
    static constexpr double kCodewordEnum = 4194304.0;      // 2^22 combinations
    static constexpr double kDualEnum = 16777216.0;         // 2^24 candidates

    static double pow_count(std::uint32_t base, std::size_t exponent) {
        return std::pow(double(base), double(exponent));
    }

    void check(double count, double limit, const char* guard_name) const {
        if (!(count <= limit * multiplier)) {
            throw GuardExceeded(std::string("guard exceeded: ") + guard_name + " needs " +
                                std::to_string(count) + " > limit " +
                                std::to_string(limit * multiplier));
        }
    }
};

}  // namespace fvtrace
