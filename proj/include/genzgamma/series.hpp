#pragma once

// Truncated infinite series with a-priori tail control.

#include <cstdint>

#include "genzgamma/types.hpp"

namespace genzgamma {

struct SeriesSum {
    double value = 0.0;
    double tail_bound = 0.0;
    std::int64_t last_index = 0;  // index of the last summed term
};

/// Smallest N >= min_last with prefactor * r^(N+1) <= tol, r = exp(log_r).
/// Throws BudgetExceeded when N - first + 1 would exceed the budget's term cap.
std::int64_t geometric_cutoff(double log_r, double prefactor, double tol, std::int64_t first,
                              std::int64_t min_last, const SeriesBudget& budget);

/// sum_{n>=1} x^n / (1 - y^n) with x = exp(log_x), y = exp(log_y).
/// Tail after N: x^(N+1) / ((1 - x)(1 - y)). At least min_last terms are
/// summed so that callers can align it with a finite companion sum.
SeriesSum qratio_series(double log_x, double log_y, const SeriesBudget& budget,
                        std::int64_t min_last = 0);

/// Tail-corrected sum_{n>=1} t / (n k (n k + t)).
///
/// The first N terms are summed directly; the remainder is replaced by its
/// Euler-Maclaurin estimate. With f(x) = t/(x k (x k + t)) one has f'' > 0
/// and f''' < 0, so the trapezoid defects on [n, n+1] are enclosed by
/// f''(n+1)/12 and f''(n)/12. Summing the enclosure gives
///   tail = int_N^inf f - f(N)/2 + E,   E in [-f'(N+1)/12, (f''(N) - f'(N))/12].
/// The midpoint of E is used and the half-width, <= t/(2 k^2 N^4), is the
/// reported tail bound.
SeriesSum digamma_series(double t, double k, const SeriesBudget& budget);

/// log(1 - q^a) for q = exp(log_q), accurate when q^a is close to 1.
double log1m_qpow(double a, double log_q);

}  // namespace genzgamma
