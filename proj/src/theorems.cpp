#include "genzgamma/theorems.hpp"

#include <cmath>
#include <string>

#include "genzgamma/gamma.hpp"
#include "genzgamma/parallel.hpp"

namespace genzgamma {

std::string_view to_string(AuxFunction f) noexcept {
    switch (f) {
        case AuxFunction::G: return "G";
        case AuxFunction::H: return "H";
        case AuxFunction::S: return "S";
        case AuxFunction::T: return "T";
    }
    return "unknown";
}

AuxFunction aux_for_theorem(int theorem_id) {
    if (theorem_id < 1 || theorem_id > 4)
        throw DomainError("theorem id must be 1..4, got " + std::to_string(theorem_id));
    return static_cast<AuxFunction>(theorem_id);
}

int theorem_for(AuxFunction f) noexcept { return static_cast<int>(f); }

bool expects_increasing(AuxFunction f) noexcept { return f == AuxFunction::S || f == AuxFunction::T; }

std::string_view to_string(MonotoneVerdict v) noexcept {
    switch (v) {
        case MonotoneVerdict::certified_monotone: return "certified_monotone";
        case MonotoneVerdict::violation: return "violation";
        case MonotoneVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

void validate(const TheoremParams& tp) {
    const ParamSet& ps = tp.params;
    switch (tp.function) {
        case AuxFunction::G:
            require_p(ps.p());
            require_q(ps.q());
            break;
        case AuxFunction::H:
        case AuxFunction::T:
            require_q(ps.q());
            require_k(ps.k());
            break;
        case AuxFunction::S:
            require_k(ps.k());
            require_p(ps.p());
            require_q(ps.q());
            break;
    }
    if (!tp.enforce_hypotheses) return;
    const bool ordered = tp.function == AuxFunction::G || tp.function == AuxFunction::H;
    if (ordered && tp.scales.lambda() < tp.scales.mu())
        throw DomainError("theorem " + std::to_string(theorem_for(tp.function)) +
                          " requires lambda >= mu; pass allow_out_of_hypothesis to explore");
    if (tp.function == AuxFunction::H && ps.k() < 1.0)
        throw DomainError("theorem 2 requires k >= 1, got k=" + std::to_string(ps.k()));
}

namespace {

// A log-space quantity with its truncation bound and component magnitude.
struct Part {
    double value = 0.0;
    double tail = 0.0;
    double magnitude = 0.0;
};

// lambda log Gamma_a(g) - mu log Gamma_b(g): the part of each auxiliary
// function that does not cancel in the chain.
Part gamma_part(const TheoremParams& tp, double g) {
    const ParamSet& ps = tp.params;
    const double l = tp.scales.lambda(), m = tp.scales.mu();
    const EvalPoint at{g};
    const SeriesBudget half{tp.budget.tail_tol() / 2.0, tp.budget.max_terms()};

    LogGammaValue num, den;
    double num_mag = 0.0, den_mag = 0.0;
    const auto q_mag = [&](double q, const LogGammaValue& v) {
        return std::fabs(v.log_value) + 2.0 * std::fabs((1.0 - g) * std::log1p(-q));
    };
    const auto k_mag = [&](double k, const LogGammaValue& v) {
        return std::fabs(v.log_value) + 2.0 * std::fabs((g / k - 1.0) * std::log(k)) +
               std::fabs(log_gamma_classical(EvalPoint{g / k}).log_value);
    };
    const auto pq_mag = [&](std::int64_t p, double q, const LogGammaValue& v) {
        double sum = std::fabs(g * log_q_bracket(static_cast<double>(p), q));
        for (std::int64_t j = 1; j <= p; ++j) sum += std::fabs(log_q_bracket(static_cast<double>(j), q));
        for (std::int64_t j = 0; j <= p; ++j) sum += std::fabs(log_q_bracket(g + static_cast<double>(j), q));
        return std::fabs(v.log_value) + 2.0 * sum;
    };
    const auto qk_mag = [&](double q, double k, const LogGammaValue& v) {
        return std::fabs(v.log_value) + 2.0 * std::fabs((g - k) / k * std::log1p(-q));
    };

    switch (tp.function) {
        case AuxFunction::G:
            num = log_gamma_q(ps.q(), at, SeriesBudget{tp.budget.tail_tol() / l, tp.budget.max_terms()});
            num_mag = q_mag(ps.q(), num);
            den = log_gamma_pq(ps.p(), ps.q(), at);
            den_mag = pq_mag(ps.p(), ps.q(), den);
            break;
        case AuxFunction::H:
            num = log_gamma_q(ps.q(), at, SeriesBudget{half.tail_tol() / l, half.max_terms()});
            num_mag = q_mag(ps.q(), num);
            den = log_gamma_qk(ps.q(), ps.k(), at, SeriesBudget{half.tail_tol() / m, half.max_terms()});
            den_mag = qk_mag(ps.q(), ps.k(), den);
            break;
        case AuxFunction::S:
            num = log_gamma_k(ps.k(), at);
            num_mag = k_mag(ps.k(), num);
            den = log_gamma_pq(ps.p(), ps.q(), at);
            den_mag = pq_mag(ps.p(), ps.q(), den);
            break;
        case AuxFunction::T:
            num = log_gamma_k(ps.k(), at);
            num_mag = k_mag(ps.k(), num);
            den = log_gamma_qk(ps.q(), ps.k(), at, SeriesBudget{tp.budget.tail_tol() / m, tp.budget.max_terms()});
            den_mag = qk_mag(ps.q(), ps.k(), den);
            break;
    }
    return {l * num.log_value - m * den.log_value, l * num.tail_bound + m * den.tail_bound,
            l * num_mag + m * den_mag};
}

// Per-unit-g coefficient of the linear prefactor terms, e.g.
// lambda ln(1-q) + mu ln[p]_q for G. The S and T prefactors add lambda ln g.
double linear_rate(const TheoremParams& tp) {
    const ParamSet& ps = tp.params;
    const double l = tp.scales.lambda(), m = tp.scales.mu();
    switch (tp.function) {
        case AuxFunction::G:
            return l * std::log1p(-ps.q()) + m * log_q_bracket(static_cast<double>(ps.p()), ps.q());
        case AuxFunction::H: return l * std::log1p(-ps.q()) - m * std::log1p(-ps.q()) / ps.k();
        case AuxFunction::S:
            return -l * std::log(ps.k()) / ps.k() + l * kEulerGamma / ps.k() +
                   m * log_q_bracket(static_cast<double>(ps.p()), ps.q());
        case AuxFunction::T:
            return l * kEulerGamma / ps.k() - l * std::log(ps.k()) / ps.k() - m * std::log1p(-ps.q()) / ps.k();
    }
    return 0.0;
}

// Sum of |component| of linear_rate, for round-off.
double linear_rate_magnitude(const TheoremParams& tp) {
    const ParamSet& ps = tp.params;
    const double l = tp.scales.lambda(), m = tp.scales.mu();
    switch (tp.function) {
        case AuxFunction::G:
            return std::fabs(l * std::log1p(-ps.q())) +
                   std::fabs(m * log_q_bracket(static_cast<double>(ps.p()), ps.q()));
        case AuxFunction::H: return std::fabs(l * std::log1p(-ps.q())) + std::fabs(m * std::log1p(-ps.q()) / ps.k());
        case AuxFunction::S:
            return std::fabs(l * std::log(ps.k()) / ps.k()) + l * kEulerGamma / ps.k() +
                   std::fabs(m * log_q_bracket(static_cast<double>(ps.p()), ps.q()));
        case AuxFunction::T:
            return l * kEulerGamma / ps.k() + std::fabs(l * std::log(ps.k()) / ps.k()) +
                   std::fabs(m * std::log1p(-ps.q()) / ps.k());
    }
    return 0.0;
}

bool has_log_g(AuxFunction f) { return f == AuxFunction::S || f == AuxFunction::T; }

LogSample sample_from(const TheoremParams& tp, double t, double g, const Part& gp) {
    const double l = tp.scales.lambda();
    const double rate = linear_rate(tp);
    double value = g * rate + gp.value;
    double magnitude = g * linear_rate_magnitude(tp) + gp.magnitude + std::fabs(value);
    if (has_log_g(tp.function)) {
        value += l * std::log(g);
        magnitude += 2.0 * std::fabs(l * std::log(g));
    }
    return {t, value, gp.tail, magnitude};
}

LogSample evaluate_unchecked(const TheoremParams& tp, double t) {
    const double g = tp.g(t);
    return sample_from(tp, t, g, gamma_part(tp, g));
}

// One end of the displayed chain: the factors evaluated at g_a relative to
// g_x, times the Gamma powers at g_a. Uses the differences (g_a - g_x) and
// ln g_a - ln g_x as they appear in the display.
Part displayed_end(const TheoremParams& tp, double ga, double gx, const Part& gp) {
    const ParamSet& ps = tp.params;
    const double l = tp.scales.lambda(), m = tp.scales.mu();
    const double d = ga - gx;
    double value = 0.0;
    double magnitude = 0.0;
    const auto add = [&](double term) {
        value += term;
        magnitude += std::fabs(term);
    };
    switch (tp.function) {
        case AuxFunction::G:
            add(l * d * std::log1p(-ps.q()));
            add(m * d * log_q_bracket(static_cast<double>(ps.p()), ps.q()));
            break;
        case AuxFunction::H:
            add(l * d * std::log1p(-ps.q()));
            add(-(m / ps.k()) * d * std::log1p(-ps.q()));
            break;
        case AuxFunction::S:
            add(l * std::log(ga) - l * std::log(gx));
            add(-(l / ps.k()) * d * std::log(ps.k()));
            add((l * kEulerGamma / ps.k()) * d);
            add(m * d * log_q_bracket(static_cast<double>(ps.p()), ps.q()));
            magnitude += std::fabs(l * std::log(ga)) + std::fabs(l * std::log(gx));
            break;
        case AuxFunction::T:
            add(l * std::log(ga) - l * std::log(gx));
            add((l * kEulerGamma / ps.k()) * d);
            add(-(l / ps.k()) * d * std::log(ps.k()));
            add(-(m / ps.k()) * d * std::log1p(-ps.q()));
            magnitude += std::fabs(l * std::log(ga)) + std::fabs(l * std::log(gx));
            break;
    }
    add(gp.value);
    return {value, gp.tail, magnitude + gp.magnitude};
}

// Verdict for one comparison "a then b" in the expected direction, given
// the gap measured in that direction (positive = as asserted).
MonotoneVerdict step_verdict(AuxFunction f, double margin, double slack) {
    if (margin < -slack) return MonotoneVerdict::violation;
    if (!expects_increasing(f)) return MonotoneVerdict::certified_monotone;
    return margin > slack ? MonotoneVerdict::certified_monotone : MonotoneVerdict::inconclusive;
}

MonotoneVerdict combine(MonotoneVerdict a, MonotoneVerdict b) {
    if (a == MonotoneVerdict::violation || b == MonotoneVerdict::violation) return MonotoneVerdict::violation;
    if (a == MonotoneVerdict::inconclusive || b == MonotoneVerdict::inconclusive)
        return MonotoneVerdict::inconclusive;
    return MonotoneVerdict::certified_monotone;
}

double directed(AuxFunction f, double earlier, double later) {
    return expects_increasing(f) ? later - earlier : earlier - later;
}

struct GridPoint {
    double t;
    double g;
    Part gamma;
    LogSample sample;
};

ChainCertificate chain_from(const TheoremParams& tp, const GridPoint& p0, const GridPoint& px,
                            const GridPoint& py) {
    const AuxFunction f = tp.function;
    ChainCertificate c;
    c.theorem_id = theorem_for(f);
    c.x = px.t;
    c.y = py.t;

    const Part left = displayed_end(tp, p0.g, px.g, p0.gamma);
    const Part right = displayed_end(tp, py.g, px.g, py.gamma);
    c.left_log = left.value;
    c.mid_log = px.gamma.value;
    c.right_log = right.value;
    c.margin_left = directed(f, c.left_log, c.mid_log);
    c.margin_right = directed(f, c.mid_log, c.right_log);
    c.slack_left = left.tail + px.gamma.tail + roundoff_allowance(left.magnitude + px.gamma.magnitude);
    c.slack_right = right.tail + px.gamma.tail + roundoff_allowance(right.magnitude + px.gamma.magnitude);
    c.verdict = combine(step_verdict(f, c.margin_left, c.slack_left),
                        step_verdict(f, c.margin_right, c.slack_right));

    const LogSample route[] = {p0.sample, px.sample, py.sample};
    c.monotone_route_verdict = order_verdict(f, route);

    // Both routes measure the same two gaps.
    const double gaps[2][2] = {{c.margin_left, directed(f, p0.sample.log_value, px.sample.log_value)},
                               {c.margin_right, directed(f, px.sample.log_value, py.sample.log_value)}};
    const double allowed[2] = {c.slack_left + comparison_slack(p0.sample, px.sample),
                               c.slack_right + comparison_slack(px.sample, py.sample)};
    for (int i = 0; i < 2; ++i) {
        const double diff = std::fabs(gaps[i][0] - gaps[i][1]);
        if (!(diff <= allowed[i]))
            throw InconsistentForms("theorem " + std::to_string(c.theorem_id) + " chain at x=" +
                                    std::to_string(c.x) + ", y=" + std::to_string(c.y) +
                                    ": displayed and monotone routes differ by " + std::to_string(diff));
    }
    return c;
}

GridPoint grid_point(const TheoremParams& tp, double t) {
    GridPoint gp;
    gp.t = t;
    gp.g = tp.g(t);
    gp.gamma = gamma_part(tp, gp.g);
    gp.sample = sample_from(tp, t, gp.g, gp.gamma);
    return gp;
}

TheoremParams make_params(AuxFunction f, const ScalePair& s, ParamSet ps, const GFunction& g,
                          const SeriesBudget& budget) {
    TheoremParams tp;
    tp.function = f;
    tp.scales = s;
    tp.params = ps;
    tp.g = g;
    tp.budget = budget;
    return tp;
}

}  // namespace

LogSample log_G(double t, const ScalePair& s, std::int64_t p, double q, const GFunction& g,
                const SeriesBudget& budget) {
    return evaluate_aux(make_params(AuxFunction::G, s, ParamSet{}.with_p(p).with_q(q), g, budget), t);
}

LogSample log_H(double t, const ScalePair& s, double q, double k, const GFunction& g, const SeriesBudget& budget) {
    return evaluate_aux(make_params(AuxFunction::H, s, ParamSet{}.with_q(q).with_k(k), g, budget), t);
}

LogSample log_S(double t, const ScalePair& s, double k, std::int64_t p, double q, const GFunction& g,
                const SeriesBudget& budget) {
    return evaluate_aux(make_params(AuxFunction::S, s, ParamSet{}.with_k(k).with_p(p).with_q(q), g, budget), t);
}

LogSample log_T(double t, const ScalePair& s, double q, double k, const GFunction& g, const SeriesBudget& budget) {
    return evaluate_aux(make_params(AuxFunction::T, s, ParamSet{}.with_q(q).with_k(k), g, budget), t);
}

LogSample evaluate_aux(const TheoremParams& params, double t) {
    validate(params);
    return evaluate_unchecked(params, t);
}

Expression aux_log_derivative(const TheoremParams& tp, double t) {
    validate(tp);
    const double gt = tp.g(t);
    const double dg = tp.g.derivative(t);
    const ParamSet& ps = tp.params;
    const ScalePair& s = tp.scales;
    Expression e;
    switch (tp.function) {
        case AuxFunction::G:
            e = lemma1_expression(s, ps.p(), ps.q(), gt, tp.budget, PsiPqForm::definitional);
            break;
        case AuxFunction::H: e = lemma2_expression(s, ps.q(), ps.k(), gt, tp.budget); break;
        case AuxFunction::S:
            e = lemma3_expression(s, ps.k(), ps.p(), ps.q(), gt, tp.budget, PsiPqForm::definitional);
            break;
        case AuxFunction::T: e = lemma4_expression(s, ps.q(), ps.k(), gt, tp.budget); break;
    }
    return {dg * e.value, dg * e.tail_bound, dg * e.magnitude};
}

std::vector<double> default_t_grid() { return {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}; }

double comparison_slack(const LogSample& a, const LogSample& b) noexcept {
    return a.tail_bound + b.tail_bound + roundoff_allowance(a.magnitude + b.magnitude);
}

MonotoneVerdict order_verdict(AuxFunction f, std::span<const LogSample> samples,
                              std::optional<std::pair<double, double>>* violation) {
    MonotoneVerdict verdict = MonotoneVerdict::certified_monotone;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const LogSample& a = samples[i - 1];
        const LogSample& b = samples[i];
        const MonotoneVerdict step =
            step_verdict(f, directed(f, a.log_value, b.log_value), comparison_slack(a, b));
        if (step == MonotoneVerdict::violation) {
            if (violation) *violation = std::make_pair(a.t, b.t);
            return MonotoneVerdict::violation;
        }
        verdict = combine(verdict, step);
    }
    return verdict;
}

namespace {

void check_grid(std::span<const double> t_grid) {
    if (t_grid.size() < 8) throw DomainError("t grid needs at least 8 points");
    if (t_grid.front() != 0.0) throw DomainError("t grid must start at 0");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw DomainError("t grid must be strictly increasing");
}

}  // namespace

MonotoneWitness certify_monotone(const TheoremParams& params, std::span<const double> t_grid) {
    validate(params);
    check_grid(t_grid);
    MonotoneWitness w;
    w.function = params.function;
    w.params = params;
    w.samples.reserve(t_grid.size());
    for (double t : t_grid) w.samples.push_back(evaluate_unchecked(params, t));
    w.verdict = order_verdict(params.function, w.samples, &w.violation);
    return w;
}

ChainCertificate verify_chain(int theorem_id, double x, double y, const TheoremParams& params) {
    if (aux_for_theorem(theorem_id) != params.function)
        throw DomainError("theorem " + std::to_string(theorem_id) + " uses auxiliary function " +
                          std::string(to_string(aux_for_theorem(theorem_id))));
    if (!(x > 0.0) || !(y > x)) throw DomainError("chain requires 0 < x < y");
    validate(params);
    return chain_from(params, grid_point(params, 0.0), grid_point(params, x), grid_point(params, y));
}

// ---------------------------------------------------------------------------
// Grid certification

TheoremGrid default_theorem_grid() {
    const LemmaGrid lg = default_lemma_grid();
    TheoremGrid g;
    g.ordered_pairs = lg.ordered_pairs;
    g.free_pairs = lg.free_pairs;
    g.p_values = lg.p_values;
    g.q_values = lg.q_values;
    g.k_values_ge1 = lg.k_values_ge1;
    g.k_values_free = lg.k_values_free;
    g.g_functions = {GFunction::affine(1.0, 1.0),         GFunction::affine(0.5, 2.0),
                     GFunction::affine(2.0, 0.5),         GFunction::affine_unit_slope(0.5),
                     GFunction::affine_unit_slope(1.0),   GFunction::exponential_saturating(1.0, 1.0)};
    g.t_grid = default_t_grid();
    return g;
}

TheoremGrid affine_unit_interval_grid() {
    TheoremGrid g = default_theorem_grid();
    g.g_functions = {GFunction::affine(1.0, 1.0),       GFunction::affine(0.5, 2.0),
                     GFunction::affine(2.0, 0.5),       GFunction::affine(0.1, 1.0),
                     GFunction::affine_unit_slope(0.5), GFunction::affine_unit_slope(1.0),
                     GFunction::affine_unit_slope(2.0)};
    g.t_grid.clear();
    for (int i = 0; i < 8; ++i) g.t_grid.push_back(i / 8.0);
    return g;
}

namespace {

struct TheoremTask {
    AuxFunction function;
    LambdaMu pair;
    std::int64_t p = 1;
    double q = 0.5;
    double k = 1.0;
    std::size_t g_index = 0;
    bool exploratory = false;
};

}  // namespace

std::vector<TheoremCheck> run_theorem_suite(const TheoremGrid& grid, const SuiteOptions& options) {
    check_grid(grid.t_grid);
    const auto ordered_ok = [](const LambdaMu& lm) { return lm.lambda >= lm.mu; };
    for (const auto& lm : grid.ordered_pairs)
        if (!ordered_ok(lm) && !options.allow_out_of_hypothesis)
            throw DomainError("theorems 1-2 require lambda >= mu; pass allow_out_of_hypothesis to explore");
    for (double k : grid.k_values_ge1)
        if (k < 1.0 && !options.allow_out_of_hypothesis)
            throw DomainError("theorem 2 requires k >= 1; pass allow_out_of_hypothesis to explore");

    std::vector<TheoremTask> tasks;
    const std::size_t ng = grid.g_functions.size();
    for (const auto& lm : grid.ordered_pairs)
        for (auto p : grid.p_values)
            for (double q : grid.q_values)
                for (std::size_t gi = 0; gi < ng; ++gi)
                    tasks.push_back({AuxFunction::G, lm, p, q, 1.0, gi, !ordered_ok(lm)});
    for (const auto& lm : grid.ordered_pairs)
        for (double q : grid.q_values)
            for (double k : grid.k_values_ge1)
                for (std::size_t gi = 0; gi < ng; ++gi)
                    tasks.push_back({AuxFunction::H, lm, 1, q, k, gi, !ordered_ok(lm) || k < 1.0});
    for (const auto& lm : grid.free_pairs)
        for (double k : grid.k_values_free)
            for (auto p : grid.p_values)
                for (double q : grid.q_values)
                    for (std::size_t gi = 0; gi < ng; ++gi)
                        tasks.push_back({AuxFunction::S, lm, p, q, k, gi, false});
    for (const auto& lm : grid.free_pairs)
        for (double q : grid.q_values)
            for (double k : grid.k_values_free)
                for (std::size_t gi = 0; gi < ng; ++gi)
                    tasks.push_back({AuxFunction::T, lm, 1, q, k, gi, false});

    return parallel_map(tasks.size(), options.workers, [&](std::size_t i) {
        const TheoremTask& task = tasks[i];
        ParamSet ps;
        switch (task.function) {
            case AuxFunction::G: ps.with_p(task.p).with_q(task.q); break;
            case AuxFunction::H:
            case AuxFunction::T: ps.with_q(task.q).with_k(task.k); break;
            case AuxFunction::S: ps.with_k(task.k).with_p(task.p).with_q(task.q); break;
        }
        TheoremParams tp = make_params(task.function, ScalePair(task.pair.lambda, task.pair.mu), ps,
                                       grid.g_functions[task.g_index], options.budget);
        tp.enforce_hypotheses = !task.exploratory;
        validate(tp);

        std::vector<GridPoint> points;
        points.reserve(grid.t_grid.size());
        for (double t : grid.t_grid) points.push_back(grid_point(tp, t));

        TheoremCheck check;
        check.exploratory = task.exploratory;
        check.witness.function = tp.function;
        check.witness.params = tp;
        for (const auto& pt : points) check.witness.samples.push_back(pt.sample);
        check.witness.verdict = order_verdict(tp.function, check.witness.samples, &check.witness.violation);

        bool any_violation = check.witness.verdict == MonotoneVerdict::violation;
        bool all_certified = check.witness.verdict == MonotoneVerdict::certified_monotone;
        for (std::size_t xi = 1; xi < points.size(); ++xi)
            for (std::size_t yi = xi + 1; yi < points.size(); ++yi) {
                ChainCertificate c = chain_from(tp, points[0], points[xi], points[yi]);
                if (c.verdict != c.monotone_route_verdict) check.routes_agree = false;
                any_violation = any_violation || c.verdict == MonotoneVerdict::violation;
                all_certified = all_certified && c.verdict == MonotoneVerdict::certified_monotone;
                check.chains.push_back(c);
            }
        check.status = any_violation   ? CheckStatus::failed
                       : all_certified ? CheckStatus::passed
                                       : CheckStatus::inconclusive;
        return check;
    });
}

}  // namespace genzgamma
