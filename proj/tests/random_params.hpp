#pragma once

// Random hypothesis-respecting theorem parameters, shared by the theorem
// tests and the acceptance binary.

#include <random>

#include "genzgamma/theorems.hpp"

namespace testing_support {

// g stays >= 0.5 with slope <= 1.5 so the third derivative of the log
// functions is small enough for a 1e-4 central difference at 1e-6.
inline genzgamma::TheoremParams random_theorem_params(genzgamma::AuxFunction f, std::mt19937_64& rng) {
    using namespace genzgamma;
    std::uniform_real_distribution<double> ld(0.1, 2.0), qd(0.05, 0.95), kd(0.25, 4.0), kge1(1.0, 4.0),
        ad(0.5, 3.0), bd(0.1, 1.5);
    TheoremParams tp;
    tp.function = f;
    const double a = ld(rng), b = ld(rng);
    const bool ordered = f == AuxFunction::G || f == AuxFunction::H;
    tp.scales = ordered ? ScalePair(std::max(a, b), std::min(a, b), Ordering::lambda_ge_mu) : ScalePair(a, b);
    const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 40);
    switch (f) {
        case AuxFunction::G: tp.params.with_p(p).with_q(qd(rng)); break;
        case AuxFunction::H: tp.params.with_q(qd(rng)).with_k(kge1(rng)); break;
        case AuxFunction::S: tp.params.with_k(kd(rng)).with_p(p).with_q(qd(rng)); break;
        case AuxFunction::T: tp.params.with_q(qd(rng)).with_k(kd(rng)); break;
    }
    switch (rng() % 3) {
        case 0: tp.g = GFunction::affine(ad(rng), bd(rng)); break;
        case 1: tp.g = GFunction::affine_unit_slope(ad(rng)); break;
        default: tp.g = GFunction::exponential_saturating(ad(rng), bd(rng)); break;
    }
    return tp;
}

}  // namespace testing_support
