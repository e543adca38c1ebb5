#pragma once

// Generalized digamma functions from their series characterizations.

#include <cstdint>

#include "genzgamma/types.hpp"

namespace genzgamma {

/// Budget used by psi_classical: tighter than the default so the result
/// is within 1e-12 of psi(t) after round-off.
inline const SeriesBudget kClassicalPsiBudget{1e-14, SeriesBudget::kDefaultMaxTerms};

/// psi(t) = -gamma - 1/t + sum_{n>=1} t / (n (n + t)).
PsiValue psi_classical(EvalPoint t);

/// psi_p(t) = log p - sum_{n=0}^{p} 1/(n + t). Finite, tail_bound = 0.
PsiValue psi_p(std::int64_t p, EvalPoint t);

/// psi_q(t) = -log(1-q) + log q sum_{n>=1} q^(nt) / (1 - q^n).
PsiValue psi_q(double q, EvalPoint t, const SeriesBudget& budget = {});

/// psi_k(t) = (log k - gamma)/k - 1/t + sum_{n>=1} t / (n k (n k + t)).
PsiValue psi_k(double k, EvalPoint t, const SeriesBudget& budget = {});

/// The finite (p,q)-digamma series log [p]_q + log q sum_{n=1}^{p} q^(nt)/(1-q^n).
/// This is the form the lemma and theorem proofs manipulate.
PsiValue psi_pq_series(std::int64_t p, double q, EvalPoint t);

/// Exact log-derivative of the (p,q)-Gamma product:
/// log [p]_q + log q sum_{j=0}^{p} q^(t+j) / (1 - q^(t+j)).
/// Differs from psi_pq_series for finite p.
PsiValue psi_pq_definitional(std::int64_t p, double q, EvalPoint t);

/// psi_pq_series - psi_pq_definitional.
double psi_pq_discrepancy(std::int64_t p, double q, EvalPoint t);

/// psi_(q,k)(t) = -log(1-q)/k + log q sum_{n>=1} q^(nkt) / (1 - q^(nk)).
PsiValue psi_qk(double q, double k, EvalPoint t, const SeriesBudget& budget = {});

}  // namespace genzgamma
