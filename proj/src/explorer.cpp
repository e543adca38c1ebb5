#include "genzgamma/explorer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "genzgamma/gamma.hpp"
#include "genzgamma/kernels.hpp"
#include "genzgamma/parallel.hpp"
#include "genzgamma/psi.hpp"
#include "genzgamma/series.hpp"

namespace genzgamma {

std::string_view to_string(Problem p) noexcept { return p == Problem::P1 ? "P1" : "P2"; }

Problem parse_problem(std::string_view name) {
    if (name == "P1" || name == "p1" || name == "1") return Problem::P1;
    if (name == "P2" || name == "p2" || name == "2") return Problem::P2;
    throw DomainError("unknown problem '" + std::string(name) + "' (expected P1 or P2)");
}

namespace {

SeriesBudget scaled(const SeriesBudget& budget, double factor) {
    return {budget.tail_tol() / std::fabs(factor), budget.max_terms()};
}

SignCertificate finish(std::string check, std::vector<NamedValue> inputs, double value, double tail,
                       double direct, double direct_tail, double series_magnitude, double magnitude) {
    SignCertificate c;
    c.check = std::move(check);
    c.inputs = std::move(inputs);
    c.value = value;
    c.tail_bound = tail;
    c.direct_value = direct;
    c.direct_tail_bound = direct_tail;
    c.verdict = classify_sign(value, tail + roundoff_allowance(series_magnitude));
    const double gap = std::fabs(direct - value);
    if (!(gap <= tail + direct_tail + roundoff_allowance(magnitude + series_magnitude)))
        throw InconsistentForms(c.check + ": psi-difference form " + std::to_string(direct) +
                                " and series form " + std::to_string(value) + " differ by " +
                                std::to_string(gap));
    return c;
}

}  // namespace

SignCertificate problem1_value(std::int64_t p, double q, double t, const SeriesBudget& budget) {
    require_p(p);
    require_q(q);
    require_positive(t, "t");
    const double lq = std::log(q);

    const double recip = kernels::reciprocal_sum(t, 0, p);
    const SeriesSum s = qratio_series(t * lq, lq, scaled(budget, lq));
    const double value = recip + lq * s.value;
    const double tail = -lq * s.tail_bound;

    const double lnp = std::log(static_cast<double>(p));
    const double ln1q = std::log1p(-q);
    const PsiValue pq = psi_q(q, EvalPoint{t}, budget);
    const PsiValue pp = psi_p(p, EvalPoint{t});
    const double direct = lnp + ln1q + pq.value - pp.value;

    const double series_magnitude = recip + std::fabs(lq * s.value);
    const double magnitude = 3.0 * (std::fabs(lnp) + std::fabs(ln1q)) + std::fabs(pq.value) + std::fabs(pp.value);
    return finish("problem1", {{"p", static_cast<double>(p)}, {"q", q}, {"t", t}}, value, tail, direct,
                  pq.tail_bound, series_magnitude, magnitude);
}

SignCertificate problem2_value(std::int64_t p, double q, double k, double t, const SeriesBudget& budget) {
    require_p(p);
    require_q(q);
    require_k(k);
    require_positive(t, "t");
    const double lq = std::log(q);

    const kernels::QRatioTerm a{1.0, t * lq, lq};
    const kernels::QRatioTerm b{1.0, k * t * lq, k * lq};
    const double pref_b = 1.0 / (-std::expm1(b.log_x) * -std::expm1(b.log_y));
    // At k = 1 the head vanishes and the sign rests on the terms after p,
    // which are >= x^(p+1); keep the tail well below that.
    double tol = budget.tail_tol() / -lq;
    const double first_omitted = std::exp((p + 1) * b.log_x);
    if (first_omitted >= std::numeric_limits<double>::min()) tol = std::min(tol, 0.25 * first_omitted);
    const std::int64_t last = geometric_cutoff(b.log_x, pref_b, tol, 1, p, budget);
    // Head: termwise a_n - b_n, exactly zero when k = 1.
    const double head = kernels::qratio_sum(a, b, 1, p);
    const double rest = kernels::qratio_sum({}, b, p + 1, last);
    const double value = lq * (head + rest);
    const double tail = -lq * pref_b * std::exp((last + 1) * b.log_x);

    const double lnpq = log_q_bracket(static_cast<double>(p), q);
    const double ln1q = std::log1p(-q);
    const PsiValue ppq = psi_pq_series(p, q, EvalPoint{t});
    const PsiValue pqk = psi_qk(q, k, EvalPoint{t}, budget);
    const double direct = -lnpq - ln1q / k + ppq.value - pqk.value;

    // Identical head series cancel term by term without rounding.
    const bool same = a.log_x == b.log_x && a.log_y == b.log_y;
    const double head_magnitude = same ? 0.0 : kernels::qratio_sum(a, {}, 1, p) - kernels::qratio_sum({}, b, 1, p);
    const double series_magnitude = -lq * (head_magnitude - rest);
    const double magnitude = 3.0 * (std::fabs(lnpq) + std::fabs(ln1q / k)) + series_magnitude +
                             std::fabs(ppq.value) + std::fabs(pqk.value);
    return finish("problem2", {{"p", static_cast<double>(p)}, {"q", q}, {"k", k}, {"t", t}}, value, tail,
                  direct, pqk.tail_bound, series_magnitude, magnitude);
}

// ---------------------------------------------------------------------------
// Axes

std::vector<double> Axis::values() const {
    if (steps < 1) throw DomainError("axis " + name + " needs at least one step");
    std::vector<double> out(static_cast<std::size_t>(steps));
    if (steps == 1) {
        out[0] = integer ? std::round(lo) : lo;
        return out;
    }
    const double n = static_cast<double>(steps - 1);
    for (std::int64_t i = 0; i < steps; ++i) {
        const double f = static_cast<double>(i) / n;
        double v = spacing == Spacing::log ? std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * f)
                                           : lo + (hi - lo) * f;
        if (i == 0) v = lo;
        if (i == steps - 1) v = hi;
        out[static_cast<std::size_t>(i)] = integer ? std::round(v) : v;
    }
    if (integer)
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i] == out[i - 1])
                throw DomainError("integer axis " + name + " has more steps than distinct values");
    return out;
}

namespace {

double parse_number(std::string_view s, std::string_view what) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DomainError("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
    return v;
}

}  // namespace

Axis parse_axis(std::string_view name, std::string_view text, bool integer) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t colon = text.find(':', start);
        parts.push_back(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    Axis a;
    a.name = std::string(name);
    a.integer = integer;
    if (parts.size() == 1) {
        a.lo = a.hi = parse_number(parts[0], name);
        a.steps = 1;
        return a;
    }
    if (parts.size() < 3 || parts.size() > 4)
        throw DomainError("axis " + a.name + " expects lo:hi:steps[:log], got '" + std::string(text) + "'");
    a.lo = parse_number(parts[0], name);
    a.hi = parse_number(parts[1], name);
    const double steps = parse_number(parts[2], name);
    if (!(steps >= 1.0) || steps != std::floor(steps))
        throw DomainError("axis " + a.name + " step count must be a positive integer");
    a.steps = static_cast<std::int64_t>(steps);
    if (parts.size() == 4) {
        if (parts[3] == "log") a.spacing = Spacing::log;
        else if (parts[3] == "lin" || parts[3] == "linear") a.spacing = Spacing::linear;
        else throw DomainError("axis spacing must be 'log' or 'linear'");
    }
    if (a.hi < a.lo) throw DomainError("axis " + a.name + " has hi < lo");
    return a;
}

std::vector<Axis> default_axes(Problem problem) {
    if (problem == Problem::P1)
        return {{"p", 1, 20, 20, Spacing::linear, true},
                {"q", 0.05, 0.95, 19, Spacing::linear, false},
                {"t", 0.1, 10, 20, Spacing::log, false}};
    return {{"p", 1, 10, 10, Spacing::linear, true},
            {"q", 0.1, 0.9, 9, Spacing::linear, false},
            {"k", 0.25, 4, 16, Spacing::linear, false},
            {"t", 0.1, 10, 10, Spacing::log, false}};
}

namespace {

std::int64_t cell_count(const std::vector<Axis>& axes) {
    std::int64_t n = 1;
    for (const auto& a : axes) {
        if (a.steps > kMaxScanPoints || n > kMaxScanPoints / a.steps) return kMaxScanPoints + 1;
        n *= a.steps;
    }
    return n;
}

}  // namespace

void validate_axes(Problem problem, const std::vector<Axis>& axes) {
    const std::vector<std::string> names =
        problem == Problem::P1 ? std::vector<std::string>{"p", "q", "t"} : std::vector<std::string>{"p", "q", "k", "t"};
    if (axes.size() != names.size()) throw DomainError("wrong number of axes for " + std::string(to_string(problem)));
    for (std::size_t i = 0; i < axes.size(); ++i) {
        const Axis& a = axes[i];
        if (a.name != names[i]) throw DomainError("axis " + std::to_string(i) + " must be " + names[i]);
        if (a.steps < 1) throw DomainError("axis " + a.name + " needs at least one step");
        if (a.spacing == Spacing::log && !(a.lo > 0.0))
            throw DomainError("log-spaced axis " + a.name + " needs lo > 0");
        if (a.name == "p" && !a.integer) throw DomainError("axis p must be integer");
        for (double v : a.values()) {
            if (a.name == "p") require_p(static_cast<std::int64_t>(v));
            else if (a.name == "q") require_q(v);
            else if (a.name == "k") require_k(v);
            else require_positive(v, "t");
        }
    }
    if (cell_count(axes) > kMaxScanPoints)
        throw DomainError("scan grid exceeds " + std::to_string(kMaxScanPoints) + " points");
}

std::vector<Axis> shrink_axes(std::vector<Axis> axes, std::int64_t max_points) {
    if (max_points < 1) throw DomainError("max points must be at least 1");
    while (cell_count(axes) > max_points) {
        auto it = std::max_element(axes.begin(), axes.end(),
                                   [](const Axis& a, const Axis& b) { return a.steps < b.steps; });
        it->steps -= 1;
        if (it->steps == 1) it->hi = it->lo;
    }
    return axes;
}

SignCertificate evaluate_problem(Problem problem, const std::vector<double>& c, const SeriesBudget& budget) {
    if (problem == Problem::P1) {
        if (c.size() != 3) throw DomainError("P1 takes (p, q, t)");
        return problem1_value(static_cast<std::int64_t>(c[0]), c[1], c[2], budget);
    }
    if (c.size() != 4) throw DomainError("P2 takes (p, q, k, t)");
    return problem2_value(static_cast<std::int64_t>(c[0]), c[1], c[2], c[3], budget);
}

namespace {

bool opposite(Verdict a, Verdict b) {
    return (a == Verdict::certified_positive && b == Verdict::certified_nonpositive) ||
           (a == Verdict::certified_nonpositive && b == Verdict::certified_positive);
}

struct BoundaryTask {
    std::size_t axis;
    std::size_t lower_cell;
    std::size_t upper_cell;
};

Boundary refine(Problem problem, const RegionMap& map, const BoundaryTask& task, const SeriesBudget& budget) {
    const Cell& lo_cell = map.cells[task.lower_cell];
    const Cell& hi_cell = map.cells[task.upper_cell];
    Boundary b;
    b.axis = task.axis;
    b.lower_verdict = lo_cell.verdict;
    b.upper_verdict = hi_cell.verdict;
    b.coords = lo_cell.coords;
    double lo = lo_cell.coords[task.axis];
    double hi = hi_cell.coords[task.axis];
    const bool integer = map.axes[task.axis].integer;

    std::vector<double> probe = lo_cell.coords;
    double location = 0.0;
    bool stopped = false;
    while (integer ? hi - lo > 1.0 : hi - lo > kBisectionWidth) {
        const double mid = integer ? std::floor((lo + hi) / 2.0) : 0.5 * (lo + hi);
        probe[task.axis] = mid;
        const Verdict v = evaluate_problem(problem, probe, budget).verdict;
        if (v == b.lower_verdict) lo = mid;
        else if (v == b.upper_verdict) hi = mid;
        else {
            location = mid;
            stopped = true;
            break;
        }
    }
    b.lower = lo;
    b.upper = hi;
    b.location = stopped ? location : 0.5 * (lo + hi);
    b.coords[task.axis] = b.location;
    return b;
}

}  // namespace

RegionMap scan(Problem problem, const std::vector<Axis>& axes, const SeriesBudget& budget, unsigned workers) {
    validate_axes(problem, axes);
    RegionMap map;
    map.problem = problem;
    map.axes = axes;

    std::vector<std::vector<double>> values;
    for (const auto& a : axes) values.push_back(a.values());
    const auto total = static_cast<std::size_t>(cell_count(axes));
    std::vector<std::size_t> strides(axes.size(), 1);
    for (std::size_t i = axes.size() - 1; i-- > 0;) strides[i] = strides[i + 1] * values[i + 1].size();

    map.cells = parallel_map(total, workers, [&](std::size_t index) {
        Cell cell;
        cell.coords.resize(axes.size());
        for (std::size_t a = 0; a < axes.size(); ++a) cell.coords[a] = values[a][(index / strides[a]) % values[a].size()];
        const SignCertificate c = evaluate_problem(problem, cell.coords, budget);
        cell.value = c.value;
        cell.tail_bound = c.tail_bound;
        cell.verdict = c.verdict;
        return cell;
    });

    std::vector<BoundaryTask> tasks;
    for (std::size_t a = 0; a < axes.size(); ++a)
        for (std::size_t i = 0; i < total; ++i) {
            if ((i / strides[a]) % values[a].size() + 1 >= values[a].size()) continue;
            const std::size_t j = i + strides[a];
            if (opposite(map.cells[i].verdict, map.cells[j].verdict)) tasks.push_back({a, i, j});
        }
    map.boundaries = parallel_map(tasks.size(), workers,
                                  [&](std::size_t i) { return refine(problem, map, tasks[i], budget); });
    return map;
}

// ---------------------------------------------------------------------------
// Serialization

std::string to_csv(const RegionMap& map) {
    std::string out;
    for (const auto& a : map.axes) out += a.name + ",";
    out += "value,tail_bound,verdict\n";
    for (const Cell& c : map.cells) {
        for (double x : c.coords) out += fmt::format("{:.17g},", x);
        out += fmt::format("{:.17g},{:.17g},{}\n", c.value, c.tail_bound, to_string(c.verdict));
    }
    return out;
}

nlohmann::json to_json(const RegionMap& map) {
    using nlohmann::json;
    json axes = json::array();
    for (const auto& a : map.axes)
        axes.push_back({{"name", a.name},
                        {"lo", a.lo},
                        {"hi", a.hi},
                        {"steps", a.steps},
                        {"spacing", a.spacing == Spacing::log ? "log" : "linear"},
                        {"integer", a.integer},
                        {"values", a.values()}});
    json verdicts = json::array(), vals = json::array(), tails = json::array();
    std::int64_t npos = 0, nneg = 0, ninc = 0;
    for (const Cell& c : map.cells) {
        verdicts.push_back(to_string(c.verdict));
        vals.push_back(c.value);
        tails.push_back(c.tail_bound);
        switch (c.verdict) {
            case Verdict::certified_positive: ++npos; break;
            case Verdict::certified_nonpositive: ++nneg; break;
            case Verdict::inconclusive: ++ninc; break;
        }
    }
    json boundaries = json::array();
    for (const Boundary& b : map.boundaries)
        boundaries.push_back({{"axis", map.axes[b.axis].name},
                              {"coords", b.coords},
                              {"lower", b.lower},
                              {"upper", b.upper},
                              {"location", b.location},
                              {"lower_verdict", to_string(b.lower_verdict)},
                              {"upper_verdict", to_string(b.upper_verdict)}});
    return {{"problem", to_string(map.problem)},
            {"axes", axes},
            {"cell_count", map.cells.size()},
            {"counts", {{"certified_positive", npos}, {"certified_nonpositive", nneg}, {"inconclusive", ninc}}},
            {"verdicts", verdicts},
            {"values", vals},
            {"tail_bounds", tails},
            {"boundaries", boundaries}};
}

}  // namespace genzgamma
