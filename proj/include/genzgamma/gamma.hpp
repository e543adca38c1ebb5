#pragma once

// Log-space evaluators for the classical Gamma function and its p-, q-,
// k-, (p,q)- and (q,k)-generalizations.

#include <cstdint>

#include "genzgamma/types.hpp"

namespace genzgamma {

/// Index convention of the q-Gamma infinite product.
enum class QGammaConvention {
    /// (1-q)^(1-t) prod_{n>=0} (1-q^(n+1)) / (1-q^(n+t)); Gamma_q(1) = 1 and
    /// d/dt log Gamma_q reproduces the q-digamma series.
    normalized,
    /// (1-q)^(1-t) prod_{n>=1} (1-q^n) / (1-q^(t+n)), the product started one
    /// index later. Equals (1 - q^t) Gamma_q(t), so Gamma_q(1) = 1 - q.
    /// Kept for comparison runs only.
    paper_literal,
};

/// Documented absolute accuracy of log_gamma_classical relative to
/// max(1, |log Gamma(t)|).
inline constexpr double kLanczosRelativeBound = 5e-15;

/// log Gamma(t) by the Lanczos approximation (g = 7, 9 coefficients), with
/// log Gamma(t) = log Gamma(t+1) - log t below t = 0.5.
LogGammaValue log_gamma_classical(EvalPoint t);

/// log of p! p^t / (t (t+1) ... (t+p)), evaluated as
/// t log p - log t - sum_{n=1}^{p} log1p(t/n).
LogGammaValue log_gamma_p(std::int64_t p, EvalPoint t);

/// log Gamma_q(t) from the infinite product, truncated geometrically.
LogGammaValue log_gamma_q(double q, EvalPoint t, const SeriesBudget& budget = {},
                          QGammaConvention convention = QGammaConvention::normalized);

/// log Gamma_k(t) = (t/k - 1) log k + log Gamma(t/k).
LogGammaValue log_gamma_k(double k, EvalPoint t);

/// log of [p]_q^t [p]_q! / ([t]_q [t+1]_q ... [t+p]_q).
LogGammaValue log_gamma_pq(std::int64_t p, double q, EvalPoint t);

/// log Gamma_(q,k)(t) as the antiderivative of the (q,k)-digamma series
/// normalized by Gamma_(q,k)(k) = 1:
///   -((t-k)/k) log(1-q) + sum_{n>=1} (q^(nkt) - q^(nk^2)) / (n k (1 - q^(nk))).
LogGammaValue log_gamma_qk(double q, double k, EvalPoint t, const SeriesBudget& budget = {});

/// q-analogue of a: (1 - q^a) / (1 - q).
double q_bracket(double a, double q);

/// log [a]_q, accurate for q near 1.
double log_q_bracket(double a, double q);

/// k-generalized Pochhammer symbol prod_{j=0}^{n-1} (t + j k).
double pochhammer_k(double t, std::int64_t n, double k);

}  // namespace genzgamma
