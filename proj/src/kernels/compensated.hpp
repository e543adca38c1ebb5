#pragma once

#include <cmath>

namespace genzgamma::kernels::detail {

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) noexcept {
        const double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }

    [[nodiscard]] double result() const noexcept { return sum + carry; }
};

}  // namespace genzgamma::kernels::detail
