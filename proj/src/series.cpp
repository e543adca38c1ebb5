#include "genzgamma/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "genzgamma/kernels.hpp"

namespace genzgamma {

namespace {

std::string show(double v) { return fmt::format("{:g}", v); }

void check_budget(std::int64_t first, std::int64_t last, const SeriesBudget& budget) {
    if (last - first + 1 > budget.max_terms())
        throw BudgetExceeded("series needs " + std::to_string(last - first + 1) +
                             " terms to reach tail_tol " + show(budget.tail_tol()) +
                             ", cap is " + std::to_string(budget.max_terms()));
}

}  // namespace

double log1m_qpow(double a, double log_q) { return std::log(-std::expm1(a * log_q)); }

std::int64_t geometric_cutoff(double log_r, double prefactor, double tol, std::int64_t first,
                              std::int64_t min_last, const SeriesBudget& budget) {
    std::int64_t last = min_last;
    if (prefactor > 0.0 && std::isfinite(log_r) && prefactor * std::exp((last + 1) * log_r) > tol) {
        // (N + 1) log r <= log(tol / prefactor)
        const double needed = std::ceil(std::log(tol / prefactor) / log_r) - 1.0;
        const double cap = static_cast<double>(first) + static_cast<double>(budget.max_terms());
        if (!(needed < cap))
            throw BudgetExceeded("geometric series needs more than " +
                                 std::to_string(budget.max_terms()) + " terms to reach tail_tol " +
                                 show(tol));
        last = std::max(last, static_cast<std::int64_t>(needed));
        while (prefactor * std::exp((last + 1) * log_r) > tol) ++last;
    }
    check_budget(first, last, budget);
    return last;
}

SeriesSum qratio_series(double log_x, double log_y, const SeriesBudget& budget, std::int64_t min_last) {
    const double prefactor = 1.0 / (-std::expm1(log_x) * -std::expm1(log_y));
    const std::int64_t last = geometric_cutoff(log_x, prefactor, budget.tail_tol(), 1, min_last, budget);
    SeriesSum out;
    out.last_index = last;
    out.value = kernels::qratio_sum({1.0, log_x, log_y}, {}, 1, last);
    out.tail_bound = prefactor * std::exp((last + 1) * log_x);
    return out;
}

SeriesSum digamma_series(double t, double k, const SeriesBudget& budget) {
    const double a = t / k;
    const double tol = budget.tail_tol();

    const double estimate = std::ceil(std::pow(t / (2.0 * k * k * tol), 0.25));
    if (!(estimate <= static_cast<double>(budget.max_terms())))
        throw BudgetExceeded("k-digamma series needs more than " + std::to_string(budget.max_terms()) +
                             " terms to reach tail_tol " + show(tol));
    const auto last = std::max<std::int64_t>(1, static_cast<std::int64_t>(estimate));

    // f(x) = (1/k) (1/x - 1/(x + a)), written without cancellation.
    const auto f = [&](double x) { return a / (k * x * (x + a)); };
    const auto f1 = [&](double x) { return -a * (2.0 * x + a) / (k * x * x * (x + a) * (x + a)); };
    const auto f2 = [&](double x) {
        const double xa = x + a;
        return 2.0 * a * (3.0 * x * x + 3.0 * x * a + a * a) / (k * x * x * x * xa * xa * xa);
    };

    const double n = static_cast<double>(last);
    const double integral = std::log1p(a / n) / k;
    const double defect_lo = -f1(n + 1.0) / 12.0;
    const double defect_hi = (f2(n) - f1(n)) / 12.0;

    SeriesSum out;
    out.last_index = last;
    const double head = kernels::digamma_sum(t, k, 1, last);
    const double tail = integral - 0.5 * f(n) + 0.5 * (defect_lo + defect_hi);
    out.value = head + tail;
    out.tail_bound = 0.5 * (defect_hi - defect_lo);
    return out;
}

}  // namespace genzgamma
