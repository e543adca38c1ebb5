#include "genzgamma/gamma.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "genzgamma/kernels.hpp"
#include "genzgamma/series.hpp"
#include "kernels/compensated.hpp"

namespace genzgamma {

namespace {

using kernels::detail::CompensatedSum;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_log_gamma(double t) {
    // Valid for t >= 0.5.
    const double z = t - 1.0;
    double series = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i)
        series += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    const double w = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(w) - w + std::log(series);
}

}  // namespace

LogGammaValue log_gamma_classical(EvalPoint t) {
    const double x = t.value();
    double value;
    if (x == 1.0 || x == 2.0)
        value = 0.0;
    else if (x >= 0.5)
        value = lanczos_log_gamma(x);
    else
        value = lanczos_log_gamma(x + 1.0) - std::log(x);
    return {value, kLanczosRelativeBound * std::max(1.0, std::fabs(value))};
}

LogGammaValue log_gamma_p(std::int64_t p, EvalPoint t) {
    require_p(p);
    const double x = t.value();
    CompensatedSum acc;
    acc.add(x * std::log(static_cast<double>(p)));
    acc.add(-std::log(x));
    for (std::int64_t n = 1; n <= p; ++n) acc.add(-std::log1p(x / static_cast<double>(n)));
    return {acc.result(), 0.0};
}

LogGammaValue log_gamma_q(double q, EvalPoint t, const SeriesBudget& budget, QGammaConvention convention) {
    require_q(q);
    const double x = t.value();
    const double lq = std::log(q);
    const double one_minus_q = -std::expm1(lq);

    CompensatedSum acc;
    acc.add((1.0 - x) * std::log1p(-q));

    if (convention == QGammaConvention::normalized) {
        // n-th factor: (1 - q^(n+1)) / (1 - q^(n+t)); numerator minus
        // denominator is q^(n+1) (q^(t-1) - 1).
        const double shift = std::expm1((x - 1.0) * lq);
        const double prefactor =
            std::fabs(q * shift) / (one_minus_q * -std::expm1(std::min(x, 1.0) * lq));
        const std::int64_t last = geometric_cutoff(lq, prefactor, budget.tail_tol(), 0, 0, budget);
        for (std::int64_t n = 0; n <= last; ++n) {
            const double m = static_cast<double>(n);
            acc.add(std::log1p(std::exp((m + 1.0) * lq) * shift / -std::expm1((m + x) * lq)));
        }
        return {acc.result(), prefactor * std::exp((last + 1) * lq)};
    }

    // paper_literal: factors (1 - q^n) / (1 - q^(n+t)) for n >= 1.
    const double shift = std::expm1(x * lq);
    const double prefactor = -shift / (one_minus_q * one_minus_q);
    const std::int64_t last = geometric_cutoff(lq, prefactor, budget.tail_tol(), 1, 0, budget);
    for (std::int64_t n = 1; n <= last; ++n) {
        const double m = static_cast<double>(n);
        acc.add(std::log1p(std::exp(m * lq) * shift / -std::expm1((m + x) * lq)));
    }
    return {acc.result(), prefactor * std::exp((last + 1) * lq)};
}

LogGammaValue log_gamma_k(double k, EvalPoint t) {
    require_k(k);
    const double ratio = t.value() / k;
    const LogGammaValue base = log_gamma_classical(EvalPoint{ratio});
    return {(ratio - 1.0) * std::log(k) + base.log_value, base.tail_bound};
}

LogGammaValue log_gamma_pq(std::int64_t p, double q, EvalPoint t) {
    require_p(p);
    require_q(q);
    const double x = t.value();
    const double lq = std::log(q);
    const double shift = std::expm1(x * lq);  // q^t - 1

    CompensatedSum acc;
    acc.add(x * log1m_qpow(static_cast<double>(p), lq));
    acc.add((1.0 - x) * std::log1p(-q));
    acc.add(-log1m_qpow(x, lq));
    for (std::int64_t j = 1; j <= p; ++j) {
        const double m = static_cast<double>(j);
        // log((1 - q^j) / (1 - q^(t+j)))
        acc.add(std::log1p(std::exp(m * lq) * shift / -std::expm1((m + x) * lq)));
    }
    return {acc.result(), 0.0};
}

LogGammaValue log_gamma_qk(double q, double k, EvalPoint t, const SeriesBudget& budget) {
    require_q(q);
    require_k(k);
    const double x = t.value();
    const double lq = std::log(q);
    const double log_r = k * std::min(x, k) * lq;
    // |term n| <= r^n / (n k (1 - q^k)); tail after N <= prefactor r^(N+1) / (N+1).
    const double prefactor = 1.0 / (k * -std::expm1(k * lq) * -std::expm1(log_r));
    const std::int64_t last = geometric_cutoff(log_r, prefactor, budget.tail_tol(), 1, 0, budget);

    const double series = kernels::qlog_sum(k * x * lq, k * k * lq, k * lq, k, 1, last);
    const double value = -((x - k) / k) * std::log1p(-q) + series;
    const double tail = prefactor * std::exp((last + 1) * log_r) / static_cast<double>(last + 1);
    return {value, tail};
}

double q_bracket(double a, double q) {
    require_q(q);
    require_positive(a, "q-bracket argument");
    const double lq = std::log(q);
    return std::expm1(a * lq) / std::expm1(lq);
}

double log_q_bracket(double a, double q) {
    require_q(q);
    require_positive(a, "q-bracket argument");
    const double lq = std::log(q);
    return log1m_qpow(a, lq) - std::log1p(-q);
}

double pochhammer_k(double t, std::int64_t n, double k) {
    require_positive(t, "t");
    require_k(k);
    if (n < 0) throw DomainError("Pochhammer length must be nonnegative");
    double product = 1.0;
    for (std::int64_t j = 0; j < n; ++j) product *= t + static_cast<double>(j) * k;
    return product;
}

}  // namespace genzgamma
