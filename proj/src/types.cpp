#include "genzgamma/types.hpp"

#include <cmath>
#include <string>

namespace genzgamma {

namespace {

std::string num(double v) { return std::to_string(v); }

}  // namespace

void require_p(std::int64_t p) {
    if (p < 1) throw DomainError("p must be a positive integer, got " + std::to_string(p));
}

void require_q(double q) {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("q must lie in (0,1), got " + num(q));
}

void require_k(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("k must be positive, got " + num(k));
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw DomainError(std::string(what) + " must be positive and finite, got " + num(v));
}

EvalPoint::EvalPoint(double t) : t_(t) { require_positive(t, "t"); }

SeriesBudget::SeriesBudget(double tail_tol, std::int64_t max_terms)
    : tail_tol_(tail_tol), max_terms_(max_terms) {
    require_positive(tail_tol, "tail_tol");
    if (max_terms < 1) throw DomainError("max_terms must be >= 1");
}

ParamSet& ParamSet::with_p(std::int64_t p) {
    require_p(p);
    p_ = p;
    return *this;
}

ParamSet& ParamSet::with_q(double q) {
    require_q(q);
    q_ = q;
    return *this;
}

ParamSet& ParamSet::with_k(double k) {
    require_k(k);
    k_ = k;
    return *this;
}

std::int64_t ParamSet::p() const {
    if (!p_) throw DomainError("parameter p is unused for this family");
    return *p_;
}

double ParamSet::q() const {
    if (!q_) throw DomainError("parameter q is unused for this family");
    return *q_;
}

double ParamSet::k() const {
    if (!k_) throw DomainError("parameter k is unused for this family");
    return *k_;
}

}  // namespace genzgamma
