// Scalar reference kernels. Each term is evaluated independently from
// libm exp/expm1, so accuracy does not depend on the term index.

#include <cmath>

#include "compensated.hpp"
#include "genzgamma/kernels.hpp"

namespace genzgamma::kernels::detail {

namespace {

inline double qratio_term(const QRatioTerm& s, double n) {
    // coeff * x^n / (1 - y^n); -expm1 keeps 1 - y^n accurate for y^n near 1.
    return s.coeff * std::exp(n * s.log_x) / -std::expm1(n * s.log_y);
}

double qratio_sum_scalar(const QRatioTerm& a, const QRatioTerm& b, std::int64_t first,
                         std::int64_t last) {
    CompensatedSum acc;
    const bool use_a = a.coeff != 0.0;
    const bool use_b = b.coeff != 0.0;
    for (std::int64_t i = first; i <= last; ++i) {
        const double n = static_cast<double>(i);
        double term = 0.0;
        if (use_a) term += qratio_term(a, n);
        if (use_b) term -= qratio_term(b, n);
        acc.add(term);
    }
    return acc.result();
}

double qlog_sum_scalar(double log_x, double log_z, double log_y, double k, std::int64_t first,
                       std::int64_t last) {
    // Factor out the larger power so that neither factor overflows.
    if (log_x > log_z) return -qlog_sum_scalar(log_z, log_x, log_y, k, first, last);
    CompensatedSum acc;
    const double log_ratio = log_x - log_z;
    for (std::int64_t i = first; i <= last; ++i) {
        const double n = static_cast<double>(i);
        // x^n - z^n = z^n (exp(n (log x - log z)) - 1), no cancellation.
        const double diff = std::exp(n * log_z) * std::expm1(n * log_ratio);
        acc.add(diff / (n * k * -std::expm1(n * log_y)));
    }
    return acc.result();
}

double reciprocal_sum_scalar(double shift, std::int64_t first, std::int64_t last) {
    CompensatedSum acc;
    for (std::int64_t i = first; i <= last; ++i) acc.add(1.0 / (static_cast<double>(i) + shift));
    return acc.result();
}

double digamma_sum_scalar(double t, double k, std::int64_t first, std::int64_t last) {
    CompensatedSum acc;
    for (std::int64_t i = first; i <= last; ++i) {
        const double nk = static_cast<double>(i) * k;
        acc.add(t / (nk * (nk + t)));
    }
    return acc.result();
}

constexpr KernelTable kScalarTable{
    qratio_sum_scalar,
    qlog_sum_scalar,
    reciprocal_sum_scalar,
    digamma_sum_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalarTable; }

}  // namespace genzgamma::kernels::detail
