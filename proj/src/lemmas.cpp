#include "genzgamma/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "genzgamma/gamma.hpp"
#include "genzgamma/kernels.hpp"
#include "genzgamma/parallel.hpp"
#include "genzgamma/psi.hpp"
#include "genzgamma/series.hpp"

namespace genzgamma {

// ---------------------------------------------------------------------------
// Value types

ScalePair::ScalePair(double lambda, double mu, Ordering ordering)
    : lambda_(lambda), mu_(mu), ordering_(ordering) {
    require_positive(lambda, "lambda");
    require_positive(mu, "mu");
    if (ordering == Ordering::lambda_ge_mu && lambda < mu)
        throw DomainError("scale pair requires lambda >= mu, got lambda=" + std::to_string(lambda) +
                          ", mu=" + std::to_string(mu));
}

std::string_view to_string(GFamily family) noexcept {
    switch (family) {
        case GFamily::affine: return "affine";
        case GFamily::affine_unit_slope: return "affine_unit_slope";
        case GFamily::exponential_saturating: return "exponential_saturating";
    }
    return "unknown";
}

GFamily parse_gfamily(std::string_view name) {
    if (name == "affine") return GFamily::affine;
    if (name == "affine_unit_slope") return GFamily::affine_unit_slope;
    if (name == "exponential_saturating") return GFamily::exponential_saturating;
    throw DomainError("unknown g family '" + std::string(name) + "'");
}

GFunction::GFunction(GFamily family, double alpha, double beta)
    : family_(family), alpha_(alpha), beta_(beta) {
    require_positive(alpha, "g alpha (g(0))");
    require_positive(beta, "g beta (g must be strictly increasing)");
}

GFunction GFunction::affine(double alpha, double beta) { return {GFamily::affine, alpha, beta}; }

GFunction GFunction::affine_unit_slope(double alpha) { return {GFamily::affine_unit_slope, alpha, 1.0}; }

GFunction GFunction::exponential_saturating(double alpha, double beta) {
    return {GFamily::exponential_saturating, alpha, beta};
}

double GFunction::operator()(double t) const {
    if (!(t >= 0.0)) throw DomainError("g is defined on [0, inf), got t=" + std::to_string(t));
    switch (family_) {
        case GFamily::affine:
        case GFamily::affine_unit_slope: return alpha_ + beta_ * t;
        case GFamily::exponential_saturating: return alpha_ - beta_ * std::expm1(-t);
    }
    return alpha_;
}

double GFunction::derivative(double t) const {
    if (!(t >= 0.0)) throw DomainError("g is defined on [0, inf), got t=" + std::to_string(t));
    switch (family_) {
        case GFamily::affine:
        case GFamily::affine_unit_slope: return beta_;
        case GFamily::exponential_saturating: return beta_ * std::exp(-t);
    }
    return beta_;
}

std::string GFunction::label() const {
    return std::string(to_string(family_)) + "(alpha=" + std::to_string(alpha_) +
           ",beta=" + std::to_string(beta_) + ")";
}

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::certified_nonpositive: return "certified_nonpositive";
        case Verdict::certified_positive: return "certified_positive";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict classify_sign(double value, double bound) noexcept {
    if (value - bound > 0.0) return Verdict::certified_positive;
    if (value + bound < 0.0) return Verdict::certified_nonpositive;
    if (value == 0.0 && bound == 0.0) return Verdict::certified_nonpositive;
    return Verdict::inconclusive;
}

double roundoff_allowance(double magnitude) noexcept { return 64.0 * kEpsilon * magnitude; }

std::string_view to_string(LemmaId id) noexcept {
    switch (id) {
        case LemmaId::lemma1: return "lemma1";
        case LemmaId::lemma2: return "lemma2";
        case LemmaId::lemma3: return "lemma3";
        case LemmaId::lemma4: return "lemma4";
    }
    return "unknown";
}

Verdict expected_verdict(LemmaId id) noexcept {
    return (id == LemmaId::lemma1 || id == LemmaId::lemma2) ? Verdict::certified_nonpositive
                                                            : Verdict::certified_positive;
}

std::string_view to_string(CheckStatus s) noexcept {
    switch (s) {
        case CheckStatus::passed: return "passed";
        case CheckStatus::failed: return "failed";
        case CheckStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

namespace {

SeriesBudget scaled(const SeriesBudget& budget, double factor) {
    return {budget.tail_tol() / std::fabs(factor), budget.max_terms()};
}

PsiValue psi_pq(PsiPqForm form, std::int64_t p, double q, double gt) {
    return form == PsiPqForm::series ? psi_pq_series(p, q, EvalPoint{gt})
                                     : psi_pq_definitional(p, q, EvalPoint{gt});
}

// Geometric tail of sum_{n>N} x^n/(1-y^n): prefactor * x^(N+1).
double qratio_prefactor(double log_x, double log_y) {
    return 1.0 / (-std::expm1(log_x) * -std::expm1(log_y));
}

void check_forms(const SignCertificate& c, double magnitude) {
    const double gap = std::fabs(c.direct_value - c.value);
    const double allowed = c.direct_tail_bound + c.tail_bound + roundoff_allowance(magnitude);
    if (!(gap <= allowed))
        throw InconsistentForms(c.check + ": direct form " + std::to_string(c.direct_value) +
                                " and collapsed form " + std::to_string(c.value) + " differ by " +
                                std::to_string(gap) + " > " + std::to_string(allowed));
}

SignCertificate make_certificate(std::string check, std::vector<NamedValue> inputs, double value,
                                 double tail, const Expression& direct) {
    SignCertificate c;
    c.check = std::move(check);
    c.inputs = std::move(inputs);
    c.value = value;
    c.tail_bound = tail;
    c.direct_value = direct.value;
    c.direct_tail_bound = direct.tail_bound;
    c.verdict = classify_sign(value, tail);
    check_forms(c, direct.magnitude + std::fabs(value));
    return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Direct forms

Expression lemma1_expression(const ScalePair& s, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget, PsiPqForm form) {
    require_p(p);
    require_q(q);
    const double l = s.lambda(), m = s.mu();
    const double ln1q = std::log1p(-q);
    const double lnpq = log_q_bracket(static_cast<double>(p), q);
    const PsiValue pq = psi_q(q, EvalPoint{gt}, scaled(budget, l));
    const PsiValue ppq = psi_pq(form, p, q, gt);

    Expression e;
    e.value = l * ln1q + m * lnpq + l * pq.value - m * ppq.value;
    e.tail_bound = l * pq.tail_bound + m * ppq.tail_bound;
    e.magnitude = 2.0 * std::fabs(l * ln1q) + 2.0 * std::fabs(m * lnpq) + std::fabs(l * pq.value) +
                  std::fabs(m * ppq.value);
    return e;
}

Expression lemma2_expression(const ScalePair& s, double q, double k, double gt, const SeriesBudget& budget) {
    require_q(q);
    require_k(k);
    const double l = s.lambda(), m = s.mu();
    const double ln1q = std::log1p(-q);
    const SeriesBudget half{budget.tail_tol() / 2.0, budget.max_terms()};
    const PsiValue pq = psi_q(q, EvalPoint{gt}, scaled(half, l));
    const PsiValue pqk = psi_qk(q, k, EvalPoint{gt}, scaled(half, m));

    Expression e;
    e.value = l * ln1q - m * ln1q / k + l * pq.value - m * pqk.value;
    e.tail_bound = l * pq.tail_bound + m * pqk.tail_bound;
    e.magnitude = 2.0 * std::fabs(l * ln1q) + 2.0 * std::fabs(m * ln1q / k) + std::fabs(l * pq.value) +
                  std::fabs(m * pqk.value);
    return e;
}

Expression lemma3_expression(const ScalePair& s, double k, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget, PsiPqForm form) {
    require_k(k);
    require_p(p);
    require_q(q);
    const double l = s.lambda(), m = s.mu();
    const double lnpq = log_q_bracket(static_cast<double>(p), q);
    const double lnk = std::log(k);
    const PsiValue pk = psi_k(k, EvalPoint{gt}, scaled(budget, l));
    const PsiValue ppq = psi_pq(form, p, q, gt);

    Expression e;
    e.value = m * lnpq - l * lnk / k + l * kEulerGamma / k + l / gt + l * pk.value - m * ppq.value;
    e.tail_bound = l * pk.tail_bound + m * ppq.tail_bound;
    e.magnitude = 2.0 * std::fabs(m * lnpq) + 2.0 * std::fabs(l * lnk / k) + 2.0 * l * kEulerGamma / k +
                  2.0 * l / gt + std::fabs(l * pk.value) + std::fabs(m * ppq.value);
    return e;
}

Expression lemma4_expression(const ScalePair& s, double q, double k, double gt, const SeriesBudget& budget) {
    require_q(q);
    require_k(k);
    const double l = s.lambda(), m = s.mu();
    const double lnk = std::log(k);
    const double ln1q = std::log1p(-q);
    const SeriesBudget half{budget.tail_tol() / 2.0, budget.max_terms()};
    const PsiValue pk = psi_k(k, EvalPoint{gt}, scaled(half, l));
    const PsiValue pqk = psi_qk(q, k, EvalPoint{gt}, scaled(half, m));

    Expression e;
    e.value = l * kEulerGamma / k + l / gt - (l * lnk + m * ln1q) / k + l * pk.value - m * pqk.value;
    e.tail_bound = l * pk.tail_bound + m * pqk.tail_bound;
    e.magnitude = 2.0 * l * kEulerGamma / k + 2.0 * l / gt + 2.0 * std::fabs(l * lnk / k) +
                  2.0 * std::fabs(m * ln1q / k) + std::fabs(l * pk.value) + std::fabs(m * pqk.value);
    return e;
}

// ---------------------------------------------------------------------------
// Certificates

SignCertificate lemma1_value(const ScalePair& s, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget, bool enforce_hypotheses) {
    if (enforce_hypotheses && s.ordering() != Ordering::lambda_ge_mu)
        throw DomainError("lemma1 requires a lambda >= mu scale pair");
    require_positive(gt, "g(t)");
    const Expression direct = lemma1_expression(s, p, q, gt, budget);

    // log q [ (lambda - mu) sum_{n=1}^{p} a_n + lambda sum_{n>p} a_n ],
    // a_n = q^(ng) / (1 - q^n)
    const double l = s.lambda(), m = s.mu();
    const double lq = std::log(q);
    const double log_x = gt * lq;
    const double pref = qratio_prefactor(log_x, lq);
    double tol = budget.tail_tol() / (l * -lq);
    // With lambda = mu the head vanishes and the sign rests on the terms
    // after p, which are >= x^(p+1); keep the tail well below that.
    const double first_omitted = std::exp((p + 1) * log_x);
    if (first_omitted >= std::numeric_limits<double>::min()) tol = std::min(tol, 0.25 * first_omitted);
    const std::int64_t last = geometric_cutoff(log_x, pref, tol, 1, p, budget);
    const double head = kernels::qratio_sum({l - m, log_x, lq}, {}, 1, p);
    const double rest = kernels::qratio_sum({l, log_x, lq}, {}, p + 1, last);
    const double value = lq * (head + rest);
    const double tail = l * -lq * pref * std::exp((last + 1) * log_x);

    return make_certificate("lemma1",
                            {{"lambda", l}, {"mu", m}, {"p", static_cast<double>(p)}, {"q", q}, {"g", gt}},
                            value, tail, direct);
}

SignCertificate lemma2_value(const ScalePair& s, double q, double k, double gt, const SeriesBudget& budget,
                             bool enforce_hypotheses) {
    if (enforce_hypotheses) {
        if (s.ordering() != Ordering::lambda_ge_mu)
            throw DomainError("lemma2 requires a lambda >= mu scale pair");
        if (k < 1.0) throw DomainError("lemma2 requires k >= 1, got k=" + std::to_string(k));
    }
    require_positive(gt, "g(t)");
    const Expression direct = lemma2_expression(s, q, k, gt, budget);

    // log q sum_{n>=1} [lambda a_n - mu b_n], b_n = q^(nkg) / (1 - q^(nk))
    const double l = s.lambda(), m = s.mu();
    const double lq = std::log(q);
    kernels::QRatioTerm a{l, gt * lq, lq};
    kernels::QRatioTerm b{m, k * gt * lq, k * lq};
    if (a.log_x == b.log_x && a.log_y == b.log_y) {
        // Identical series: merge so that lambda = mu gives an exact zero.
        a.coeff = l - m;
        b.coeff = 0.0;
    }
    const double tol = budget.tail_tol() / (-lq);
    std::int64_t last = 0;
    double tail_sum = 0.0;
    for (const auto* series : {&a, &b}) {
        if (series->coeff == 0.0) continue;
        const double pref = std::fabs(series->coeff) * qratio_prefactor(series->log_x, series->log_y);
        last = std::max(last, geometric_cutoff(series->log_x, pref, tol / 2.0, 1, 0, budget));
    }
    for (const auto* series : {&a, &b}) {
        if (series->coeff == 0.0) continue;
        tail_sum += std::fabs(series->coeff) * qratio_prefactor(series->log_x, series->log_y) *
                    std::exp((last + 1) * series->log_x);
    }
    const double value = lq * kernels::qratio_sum(a, b, 1, last);

    return make_certificate("lemma2", {{"lambda", l}, {"mu", m}, {"q", q}, {"k", k}, {"g", gt}}, value,
                            -lq * tail_sum, direct);
}

SignCertificate lemma3_value(const ScalePair& s, double k, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget) {
    require_positive(gt, "g(t)");
    const Expression direct = lemma3_expression(s, k, p, q, gt, budget);

    // lambda sum_{n>=1} g / (nk (nk + g)) - mu log q sum_{n=1}^{p} a_n
    const double l = s.lambda(), m = s.mu();
    const double lq = std::log(q);
    const SeriesSum d = digamma_series(gt, k, scaled(budget, l));
    const double finite = kernels::qratio_sum({1.0, gt * lq, lq}, {}, 1, p);
    const double value = l * d.value - m * lq * finite;

    return make_certificate(
        "lemma3", {{"lambda", l}, {"mu", m}, {"k", k}, {"p", static_cast<double>(p)}, {"q", q}, {"g", gt}},
        value, l * d.tail_bound, direct);
}

SignCertificate lemma4_value(const ScalePair& s, double q, double k, double gt, const SeriesBudget& budget) {
    require_positive(gt, "g(t)");
    const Expression direct = lemma4_expression(s, q, k, gt, budget);

    // lambda sum_{n>=1} g / (nk (nk + g)) - mu log q sum_{n>=1} b_n
    const double l = s.lambda(), m = s.mu();
    const double lq = std::log(q);
    const SeriesBudget half{budget.tail_tol() / 2.0, budget.max_terms()};
    const SeriesSum d = digamma_series(gt, k, scaled(half, l));
    const SeriesSum b = qratio_series(k * gt * lq, k * lq, scaled(half, m * lq));
    const double value = l * d.value - m * lq * b.value;

    return make_certificate("lemma4", {{"lambda", l}, {"mu", m}, {"q", q}, {"k", k}, {"g", gt}}, value,
                            l * d.tail_bound - m * lq * b.tail_bound, direct);
}

// ---------------------------------------------------------------------------
// Grid certification

LemmaGrid default_lemma_grid() {
    LemmaGrid g;
    g.p_values = {1, 2, 5, 10, 50};
    g.q_values = {0.1, 0.3, 0.5, 0.7, 0.9};
    g.k_values_ge1 = {1.0, 1.5, 2.0, 5.0};
    g.k_values_free = {0.25, 0.5, 1.0, 1.5, 2.0, 5.0};
    g.ordered_pairs = {{1.0, 1.0}, {2.0, 1.0}, {1.0, 0.5}, {5.0, 0.1}};
    g.free_pairs = {{1.0, 1.0}, {2.0, 1.0}, {1.0, 0.5}, {5.0, 0.1}, {0.5, 1.0}, {0.1, 5.0}};
    g.gt_values = {0.1, 0.5, 1.0, 2.0, 10.0};
    return g;
}

namespace {

CheckStatus status_for(Verdict got, Verdict expected) {
    if (got == expected) return CheckStatus::passed;
    if (got == Verdict::inconclusive) return CheckStatus::inconclusive;
    return CheckStatus::failed;
}

struct LemmaTask {
    LemmaId lemma;
    LambdaMu pair;
    std::int64_t p = 1;
    double q = 0.5;
    double k = 1.0;
    double gt = 1.0;
    bool exploratory = false;
};

}  // namespace

std::vector<LemmaCheck> run_lemma_suite(const LemmaGrid& grid, const SuiteOptions& options) {
    std::vector<LemmaTask> tasks;
    const auto ordered_ok = [&](const LambdaMu& lm) { return lm.lambda >= lm.mu; };
    for (const auto& lm : grid.ordered_pairs)
        if (!ordered_ok(lm) && !options.allow_out_of_hypothesis)
            throw DomainError("lemmas 1-2 require lambda >= mu; pass allow_out_of_hypothesis to explore");
    for (double k : grid.k_values_ge1)
        if (k < 1.0 && !options.allow_out_of_hypothesis)
            throw DomainError("lemma 2 requires k >= 1; pass allow_out_of_hypothesis to explore");

    for (const auto& lm : grid.ordered_pairs)
        for (auto p : grid.p_values)
            for (double q : grid.q_values)
                for (double gt : grid.gt_values)
                    tasks.push_back({LemmaId::lemma1, lm, p, q, 1.0, gt, !ordered_ok(lm)});
    for (const auto& lm : grid.ordered_pairs)
        for (double q : grid.q_values)
            for (double k : grid.k_values_ge1)
                for (double gt : grid.gt_values)
                    tasks.push_back({LemmaId::lemma2, lm, 1, q, k, gt, !ordered_ok(lm) || k < 1.0});
    for (const auto& lm : grid.free_pairs)
        for (double k : grid.k_values_free)
            for (auto p : grid.p_values)
                for (double q : grid.q_values)
                    for (double gt : grid.gt_values)
                        tasks.push_back({LemmaId::lemma3, lm, p, q, k, gt, false});
    for (const auto& lm : grid.free_pairs)
        for (double q : grid.q_values)
            for (double k : grid.k_values_free)
                for (double gt : grid.gt_values)
                    tasks.push_back({LemmaId::lemma4, lm, 1, q, k, gt, false});

    return parallel_map(tasks.size(), options.workers, [&](std::size_t i) {
        const LemmaTask& t = tasks[i];
        const Ordering ord = t.exploratory ? Ordering::free : Ordering::lambda_ge_mu;
        LemmaCheck check;
        check.lemma = t.lemma;
        check.exploratory = t.exploratory;
        switch (t.lemma) {
            case LemmaId::lemma1:
                check.certificate = lemma1_value(ScalePair(t.pair.lambda, t.pair.mu, ord), t.p, t.q, t.gt,
                                                 options.budget, !t.exploratory);
                break;
            case LemmaId::lemma2:
                check.certificate = lemma2_value(ScalePair(t.pair.lambda, t.pair.mu, ord), t.q, t.k, t.gt,
                                                 options.budget, !t.exploratory);
                break;
            case LemmaId::lemma3:
                check.certificate =
                    lemma3_value(ScalePair(t.pair.lambda, t.pair.mu), t.k, t.p, t.q, t.gt, options.budget);
                break;
            case LemmaId::lemma4:
                check.certificate =
                    lemma4_value(ScalePair(t.pair.lambda, t.pair.mu), t.q, t.k, t.gt, options.budget);
                break;
        }
        check.status = status_for(check.certificate.verdict, expected_verdict(t.lemma));
        return check;
    });
}

std::vector<SignCertificate> lemma1_necessity_probe(const LemmaGrid& grid, const SuiteOptions& options) {
    static constexpr LambdaMu kReversed[] = {{0.5, 1.0}, {0.1, 5.0}, {1.0, 2.0}};
    struct Task {
        LambdaMu pair;
        std::int64_t p;
        double q;
        double gt;
    };
    std::vector<Task> tasks;
    for (const auto& lm : kReversed)
        for (auto p : grid.p_values)
            for (double q : grid.q_values)
                for (double gt : grid.gt_values) tasks.push_back({lm, p, q, gt});

    return parallel_map(tasks.size(), options.workers, [&](std::size_t i) {
        const Task& t = tasks[i];
        return lemma1_value(ScalePair(t.pair.lambda, t.pair.mu), t.p, t.q, t.gt, options.budget, false);
    });
}

}  // namespace genzgamma
