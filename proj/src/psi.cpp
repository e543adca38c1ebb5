#include "genzgamma/psi.hpp"

#include <algorithm>
#include <cmath>

#include "genzgamma/gamma.hpp"
#include "genzgamma/kernels.hpp"
#include "genzgamma/series.hpp"
#include "kernels/compensated.hpp"

namespace genzgamma {

namespace {

// Budget for a series that is multiplied by `factor` afterwards.
SeriesBudget scaled(const SeriesBudget& budget, double factor) {
    return {budget.tail_tol() / std::fabs(factor), budget.max_terms()};
}

}  // namespace

PsiValue psi_classical(EvalPoint t) { return psi_k(1.0, t, kClassicalPsiBudget); }

PsiValue psi_p(std::int64_t p, EvalPoint t) {
    require_p(p);
    const double sum = kernels::reciprocal_sum(t.value(), 0, p);
    return {std::log(static_cast<double>(p)) - sum, 0.0};
}

PsiValue psi_q(double q, EvalPoint t, const SeriesBudget& budget) {
    require_q(q);
    const double lq = std::log(q);
    const SeriesSum s = qratio_series(t.value() * lq, lq, scaled(budget, lq));
    return {-std::log1p(-q) + lq * s.value, -lq * s.tail_bound};
}

PsiValue psi_k(double k, EvalPoint t, const SeriesBudget& budget) {
    require_k(k);
    const double x = t.value();
    const SeriesSum s = digamma_series(x, k, budget);
    return {(std::log(k) - kEulerGamma) / k - 1.0 / x + s.value, s.tail_bound};
}

PsiValue psi_pq_series(std::int64_t p, double q, EvalPoint t) {
    require_p(p);
    require_q(q);
    const double lq = std::log(q);
    const double sum = kernels::qratio_sum({1.0, t.value() * lq, lq}, {}, 1, p);
    return {log_q_bracket(static_cast<double>(p), q) + lq * sum, 0.0};
}

PsiValue psi_pq_definitional(std::int64_t p, double q, EvalPoint t) {
    require_p(p);
    require_q(q);
    const double lq = std::log(q);
    kernels::detail::CompensatedSum acc;
    for (std::int64_t j = 0; j <= p; ++j) {
        // q^a / (1 - q^a) = 1 / (q^-a - 1)
        const double a = t.value() + static_cast<double>(j);
        acc.add(1.0 / std::expm1(-a * lq));
    }
    return {log_q_bracket(static_cast<double>(p), q) + lq * acc.result(), 0.0};
}

double psi_pq_discrepancy(std::int64_t p, double q, EvalPoint t) {
    require_p(p);
    require_q(q);
    // Both sums tend to the same limit (expand q^a/(1-q^a) as a geometric
    // series and swap the order), so the difference is the difference of
    // the two tails past p. Summing the tails keeps relative accuracy where
    // subtracting the finite sums would cancel to round-off.
    const double lq = std::log(q);
    // Slower of the two decay ratios q and q^t.
    const double inv_gap = 1.0 / -std::expm1(std::min(1.0, t.value()) * lq);
    kernels::detail::CompensatedSum def_tail, series_tail;
    for (std::int64_t n = p + 1;; ++n) {
        const double nd = static_cast<double>(n);
        const double d = 1.0 / std::expm1(-(t.value() + nd) * lq);
        const double s = std::exp(nd * t.value() * lq) / -std::expm1(nd * lq);
        def_tail.add(d);
        series_tail.add(s);
        const double scale = std::fabs(def_tail.result()) + std::fabs(series_tail.result());
        if ((d + s) * inv_gap <= 1e-17 * scale || d + s == 0.0) break;
        if (n - p > SeriesBudget::kDefaultMaxTerms)
            return psi_pq_series(p, q, t).value - psi_pq_definitional(p, q, t).value;
    }
    return lq * (def_tail.result() - series_tail.result());
}

PsiValue psi_qk(double q, double k, EvalPoint t, const SeriesBudget& budget) {
    require_q(q);
    require_k(k);
    const double lq = std::log(q);
    const SeriesSum s = qratio_series(k * t.value() * lq, k * lq, scaled(budget, lq));
    return {-std::log1p(-q) / k + lq * s.value, -lq * s.tail_bound};
}

}  // namespace genzgamma
