#include "genzgamma/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "genzgamma/explorer.hpp"
#include "genzgamma/gamma.hpp"
#include "genzgamma/kernels.hpp"
#include "genzgamma/psi.hpp"
#include "genzgamma/theorems.hpp"

namespace genzgamma {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    if (name == "text") return OutputFormat::text;
    throw DomainError("unknown output format '" + name + "' (json, csv, text)");
}

namespace {

const std::set<std::string> kEvalTargets = {"classical", "gamma_p", "gamma_q", "gamma_k", "gamma_pq", "gamma_qk",
                                            "psi_p",     "psi_q",   "psi_k",   "psi_pq",  "psi_qk"};
const std::set<std::string> kCommands = {"eval", "verify-lemmas", "verify-theorems", "limits", "explore"};

std::string num(double v) { return fmt::format("{:.17g}", v); }

json budget_json(const SeriesBudget& b) { return {{"tail_tol", b.tail_tol()}, {"max_terms", b.max_terms()}}; }

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    if (!c.target.empty()) j["target"] = c.target;
    if (c.p) j["p"] = *c.p;
    if (c.q) j["q"] = *c.q;
    if (c.k) j["k"] = *c.k;
    if (!c.t.empty()) j["t"] = c.t;
    if (c.lambda) j["lambda"] = *c.lambda;
    if (c.mu) j["mu"] = *c.mu;
    if (c.g_family) j["g"] = *c.g_family;
    if (c.alpha) j["alpha"] = *c.alpha;
    if (c.beta) j["beta"] = *c.beta;
    j["budget"] = budget_json(c.budget);
    j["workers"] = c.workers;
    j["allow_out_of_hypothesis"] = c.allow_out_of_hypothesis;
    if (c.paper_literal) j["paper_literal"] = true;
    if (!c.ranges.empty()) j["ranges"] = c.ranges;
    if (c.max_points) j["max_points"] = *c.max_points;
    j["isa"] = kernels::isa_name(kernels::active_isa());
    return j;
}

RunReport start(const RunConfig& c) {
    RunReport r;
    r.command = c.command;
    r.config = config_json(c);
    return r;
}

json inputs_json(const std::vector<NamedValue>& inputs) {
    json j = json::object();
    for (const auto& nv : inputs) j[nv.name] = nv.value;
    return j;
}

json certificate_json(const SignCertificate& c) {
    return {{"check", c.check},
            {"inputs", inputs_json(c.inputs)},
            {"value", c.value},
            {"tail_bound", c.tail_bound},
            {"direct_value", c.direct_value},
            {"direct_tail_bound", c.direct_tail_bound},
            {"verdict", to_string(c.verdict)}};
}

std::string inputs_text(const std::vector<NamedValue>& inputs) {
    std::string s;
    for (const auto& nv : inputs) s += (s.empty() ? "" : " ") + nv.name + "=" + fmt::format("{:g}", nv.value);
    return s;
}

GFunction make_g(const RunConfig& c) {
    const std::string family = c.g_family.value_or("affine");
    const double alpha = c.alpha.value_or(1.0);
    const double beta = c.beta.value_or(1.0);
    switch (parse_gfamily(family)) {
        case GFamily::affine: return GFunction::affine(alpha, beta);
        case GFamily::affine_unit_slope: return GFunction::affine_unit_slope(alpha);
        case GFamily::exponential_saturating: return GFunction::exponential_saturating(alpha, beta);
    }
    return GFunction::affine(alpha, beta);
}

}  // namespace

void validate(const RunConfig& c) {
    if (!kCommands.contains(c.command)) throw DomainError("unknown command '" + c.command + "'");
    if (c.command == "eval") {
        if (!kEvalTargets.contains(c.target))
            throw DomainError("eval needs a function name: classical, gamma_p, gamma_q, gamma_k, gamma_pq, "
                              "gamma_qk, psi_p, psi_q, psi_k, psi_pq or psi_qk");
        if (c.t.empty()) throw DomainError("eval needs at least one --t value");
    }
    if (c.command == "explore") (void)parse_problem(c.target.empty() ? "P1" : c.target);
    if (c.p) require_p(*c.p);
    if (c.q) require_q(*c.q);
    if (c.k) require_k(*c.k);
    if (c.lambda) require_positive(*c.lambda, "lambda");
    if (c.mu) require_positive(*c.mu, "mu");
    if (c.lambda.has_value() != c.mu.has_value()) throw DomainError("--lambda and --mu must be given together");
    if (c.g_family) (void)parse_gfamily(*c.g_family);
    if (c.g_family || c.alpha || c.beta) (void)make_g(c);
    if (c.workers < 1) throw DomainError("workers must be at least 1");
    if (c.max_points && *c.max_points < 1) throw DomainError("--max-points must be at least 1");
    if (c.paper_literal && !(c.command == "eval" && c.target == "gamma_q"))
        throw DomainError("--paper-literal applies to 'eval gamma_q' only");
}

// ---------------------------------------------------------------------------
// eval

RunReport cmd_eval(const RunConfig& c) {
    RunReport r = start(c);
    const std::string& f = c.target;
    const auto need_p = [&] {
        if (!c.p) throw DomainError(f + " needs --p");
        return *c.p;
    };
    const auto need_q = [&] {
        if (!c.q) throw DomainError(f + " needs --q");
        return *c.q;
    };
    const auto need_k = [&] {
        if (!c.k) throw DomainError(f + " needs --k");
        return *c.k;
    };

    r.results = json::array();
    r.csv = "function,t,value,log_value,tail_bound\n";
    for (double t : c.t) {
        const EvalPoint at{t};
        json row{{"function", f}, {"t", t}};
        double value = 0.0, tail = 0.0;
        std::optional<double> log_value;
        if (f.starts_with("gamma") || f == "classical") {
            LogGammaValue v;
            if (f == "classical") v = log_gamma_classical(at);
            else if (f == "gamma_p") v = log_gamma_p(need_p(), at);
            else if (f == "gamma_q")
                v = log_gamma_q(need_q(), at, c.budget,
                                c.paper_literal ? QGammaConvention::paper_literal : QGammaConvention::normalized);
            else if (f == "gamma_k") v = log_gamma_k(need_k(), at);
            else if (f == "gamma_pq") v = log_gamma_pq(need_p(), need_q(), at);
            else v = log_gamma_qk(need_q(), need_k(), at, c.budget);
            log_value = v.log_value;
            value = std::exp(v.log_value);
            tail = v.tail_bound;
        } else {
            PsiValue v;
            if (f == "psi_p") v = psi_p(need_p(), at);
            else if (f == "psi_q") v = psi_q(need_q(), at, c.budget);
            else if (f == "psi_k") v = psi_k(need_k(), at, c.budget);
            else if (f == "psi_pq") {
                v = psi_pq_series(need_p(), need_q(), at);
                row["definitional_value"] = psi_pq_definitional(need_p(), need_q(), at).value;
                row["discrepancy"] = psi_pq_discrepancy(need_p(), need_q(), at);
            } else v = psi_qk(need_q(), need_k(), at, c.budget);
            value = v.value;
            tail = v.tail_bound;
        }
        row["value"] = value;
        if (log_value) row["log_value"] = *log_value;
        row["tail_bound"] = tail;
        r.results.push_back(row);
        r.csv += f + "," + num(t) + "," + num(value) + "," + (log_value ? num(*log_value) : "") + "," + num(tail) + "\n";
        std::string line = fmt::format("{}(t={:.17g}) = {:.17g}", f, t, value);
        if (log_value) line += fmt::format("  log = {:.17g}", *log_value);
        line += fmt::format("  tail_bound = {:.3g}", tail);
        if (row.contains("discrepancy"))
            line += fmt::format("  definitional = {:.17g}  discrepancy = {:.17g}", row["definitional_value"].get<double>(),
                                row["discrepancy"].get<double>());
        r.text.push_back(line);
    }
    r.summary.passed = static_cast<std::int64_t>(c.t.size());
    return r;
}

// ---------------------------------------------------------------------------
// verify-lemmas / verify-theorems

namespace {

LemmaGrid lemma_grid_for(const RunConfig& c) {
    LemmaGrid g = default_lemma_grid();
    if (c.p) g.p_values = {*c.p};
    if (c.q) g.q_values = {*c.q};
    if (c.k) g.k_values_ge1 = g.k_values_free = {*c.k};
    if (c.lambda) g.ordered_pairs = g.free_pairs = {{*c.lambda, *c.mu}};
    if (!c.t.empty()) g.gt_values = c.t;
    return g;
}

json lemma_grid_json(const LemmaGrid& g) {
    json pairs_o = json::array(), pairs_f = json::array();
    for (const auto& lm : g.ordered_pairs) pairs_o.push_back({lm.lambda, lm.mu});
    for (const auto& lm : g.free_pairs) pairs_f.push_back({lm.lambda, lm.mu});
    return {{"p", g.p_values},           {"q", g.q_values},           {"k_ge1", g.k_values_ge1},
            {"k_free", g.k_values_free}, {"ordered_pairs", pairs_o}, {"free_pairs", pairs_f},
            {"g_values", g.gt_values}};
}

TheoremGrid theorem_grid_override(TheoremGrid g, const RunConfig& c) {
    if (c.p) g.p_values = {*c.p};
    if (c.q) g.q_values = {*c.q};
    if (c.k) g.k_values_ge1 = g.k_values_free = {*c.k};
    if (c.lambda) g.ordered_pairs = g.free_pairs = {{*c.lambda, *c.mu}};
    if (c.g_family || c.alpha || c.beta) g.g_functions = {make_g(c)};
    return g;
}

json theorem_grid_json(const TheoremGrid& g) {
    json pairs_o = json::array(), pairs_f = json::array(), gs = json::array();
    for (const auto& lm : g.ordered_pairs) pairs_o.push_back({lm.lambda, lm.mu});
    for (const auto& lm : g.free_pairs) pairs_f.push_back({lm.lambda, lm.mu});
    for (const auto& gf : g.g_functions) gs.push_back(gf.label());
    return {{"p", g.p_values},           {"q", g.q_values},           {"k_ge1", g.k_values_ge1},
            {"k_free", g.k_values_free}, {"ordered_pairs", pairs_o}, {"free_pairs", pairs_f},
            {"g_functions", gs},         {"t_grid", g.t_grid}};
}

json params_json(const TheoremParams& tp) {
    json j{{"function", to_string(tp.function)},
           {"lambda", tp.scales.lambda()},
           {"mu", tp.scales.mu()},
           {"g", tp.g.label()}};
    if (tp.params.has_p()) j["p"] = tp.params.p();
    if (tp.params.has_q()) j["q"] = tp.params.q();
    if (tp.params.has_k()) j["k"] = tp.params.k();
    return j;
}

std::string params_text(const TheoremParams& tp) {
    std::string s = fmt::format("{} lambda={:g} mu={:g}", to_string(tp.function), tp.scales.lambda(), tp.scales.mu());
    if (tp.params.has_p()) s += fmt::format(" p={}", tp.params.p());
    if (tp.params.has_q()) s += fmt::format(" q={:g}", tp.params.q());
    if (tp.params.has_k()) s += fmt::format(" k={:g}", tp.params.k());
    return s + " g=" + tp.g.label();
}

json chain_json(const ChainCertificate& c) {
    return {{"theorem", c.theorem_id},
            {"x", c.x},
            {"y", c.y},
            {"left_log", c.left_log},
            {"mid_log", c.mid_log},
            {"right_log", c.right_log},
            {"margin_left", c.margin_left},
            {"margin_right", c.margin_right},
            {"slack_left", c.slack_left},
            {"slack_right", c.slack_right},
            {"verdict", to_string(c.verdict)},
            {"monotone_route_verdict", to_string(c.monotone_route_verdict)}};
}

void tally(Summary& s, CheckStatus status) {
    switch (status) {
        case CheckStatus::passed: ++s.passed; break;
        case CheckStatus::failed: ++s.failed; break;
        case CheckStatus::inconclusive: ++s.inconclusive; break;
    }
}

RunReport verify_lemmas(const RunConfig& c) {
    RunReport r = start(c);
    const LemmaGrid grid = lemma_grid_for(c);
    const SuiteOptions opts{c.budget, c.workers, c.allow_out_of_hypothesis};
    r.config["grid"] = lemma_grid_json(grid);
    const auto checks = run_lemma_suite(grid, opts);

    json list = json::array();
    json violations = json::array();
    std::int64_t exploratory = 0, hard_failures = 0;
    r.csv = "lemma,inputs,value,tail_bound,direct_value,verdict,status,exploratory\n";
    for (const auto& ch : checks) {
        tally(r.summary, ch.status);
        json j = certificate_json(ch.certificate);
        j["lemma"] = to_string(ch.lemma);
        j["status"] = to_string(ch.status);
        j["exploratory"] = ch.exploratory;
        if (ch.exploratory) ++exploratory;
        if (ch.status == CheckStatus::failed) {
            if (!ch.exploratory) ++hard_failures;
            violations.push_back(j);
            r.text.push_back(fmt::format("{} {}: {} {}", ch.exploratory ? "EXPLORATORY" : "VIOLATION",
                                         to_string(ch.lemma), inputs_text(ch.certificate.inputs),
                                         to_string(ch.certificate.verdict)));
        }
        r.csv += fmt::format("{},\"{}\",{},{},{},{},{},{}\n", to_string(ch.lemma), inputs_text(ch.certificate.inputs),
                             num(ch.certificate.value), num(ch.certificate.tail_bound),
                             num(ch.certificate.direct_value), to_string(ch.certificate.verdict),
                             to_string(ch.status), ch.exploratory ? "true" : "false");
        list.push_back(std::move(j));
    }

    // Ordering hypothesis probe for lemma 1: positive values are expected.
    const auto probe = lemma1_necessity_probe(grid, opts);
    std::int64_t probe_positive = 0;
    for (const auto& cert : probe) probe_positive += cert.verdict == Verdict::certified_positive;

    r.results = {{"checks", list},
                 {"violations", violations},
                 {"exploratory_checks", exploratory},
                 {"lemma1_necessity_probe", {{"evaluated", probe.size()}, {"certified_positive", probe_positive}}}};
    r.text.insert(r.text.begin(),
                  fmt::format("verify-lemmas: {} checks, passed {}, failed {}, inconclusive {}, exploratory {}",
                              checks.size(), r.summary.passed, r.summary.failed, r.summary.inconclusive,
                              exploratory));
    r.text.push_back(fmt::format("lemma 1 with lambda < mu: {} of {} points certified positive (hypothesis needed)",
                                 probe_positive, probe.size()));
    r.exit_code = hard_failures > 0 ? ExitCode::violation : ExitCode::ok;
    return r;
}

RunReport verify_theorems(const RunConfig& c) {
    RunReport r = start(c);
    const SuiteOptions opts{c.budget, c.workers, c.allow_out_of_hypothesis};
    struct Section {
        std::string name;
        TheoremGrid grid;
    };
    std::vector<Section> sections = {{"default", theorem_grid_override(default_theorem_grid(), c)}};
    if (!(c.g_family || c.alpha || c.beta))
        sections.push_back({"affine_unit_interval", theorem_grid_override(affine_unit_interval_grid(), c)});

    json grids = json::object();
    json list = json::array();
    json violations = json::array();
    std::int64_t hard_failures = 0, exploratory = 0, disagreements = 0, chains = 0;
    r.csv = "section,params,witness,chains,status,exploratory,routes_agree\n";
    for (const auto& sec : sections) {
        grids[sec.name] = theorem_grid_json(sec.grid);
        const auto checks = run_theorem_suite(sec.grid, opts);
        for (const auto& ch : checks) {
            tally(r.summary, ch.status);
            chains += static_cast<std::int64_t>(ch.chains.size());
            if (ch.exploratory) ++exploratory;
            if (!ch.routes_agree) ++disagreements;
            std::int64_t certified = 0, violated = 0, inconclusive = 0;
            double min_margin = INFINITY;
            for (const auto& cc : ch.chains) {
                certified += cc.verdict == MonotoneVerdict::certified_monotone;
                violated += cc.verdict == MonotoneVerdict::violation;
                inconclusive += cc.verdict == MonotoneVerdict::inconclusive;
                min_margin = std::min({min_margin, cc.margin_left, cc.margin_right});
            }
            json j{{"section", sec.name},
                   {"theorem", theorem_for(ch.witness.function)},
                   {"params", params_json(ch.witness.params)},
                   {"witness", to_string(ch.witness.verdict)},
                   {"chains", {{"certified", certified}, {"violation", violated}, {"inconclusive", inconclusive}}},
                   {"min_margin", min_margin},
                   {"status", to_string(ch.status)},
                   {"exploratory", ch.exploratory},
                   {"routes_agree", ch.routes_agree}};
            if (ch.witness.violation)
                j["witness_violation"] = {ch.witness.violation->first, ch.witness.violation->second};
            if (ch.status == CheckStatus::failed || !ch.routes_agree) {
                json samples = json::array();
                for (const auto& s : ch.witness.samples)
                    samples.push_back({{"t", s.t}, {"log_value", s.log_value}, {"tail_bound", s.tail_bound}});
                json bad = json::array();
                for (const auto& cc : ch.chains)
                    if (cc.verdict != MonotoneVerdict::certified_monotone || cc.verdict != cc.monotone_route_verdict)
                        bad.push_back(chain_json(cc));
                json v = j;
                v["samples"] = samples;
                v["failing_chains"] = bad;
                violations.push_back(v);
                if (!ch.exploratory) ++hard_failures;
                r.text.push_back(fmt::format("{} theorem {}: {} witness={} violating chains={}",
                                             ch.exploratory ? "EXPLORATORY" : "VIOLATION", theorem_for(ch.witness.function),
                                             params_text(ch.witness.params), to_string(ch.witness.verdict), violated));
            }
            r.csv += fmt::format("{},\"{}\",{},{},{},{},{}\n", sec.name, params_text(ch.witness.params),
                                 to_string(ch.witness.verdict), ch.chains.size(), to_string(ch.status),
                                 ch.exploratory ? "true" : "false", ch.routes_agree ? "true" : "false");
            list.push_back(std::move(j));
        }
    }
    r.config["grids"] = grids;
    r.results = {{"checks", list},
                 {"violations", violations},
                 {"chains_evaluated", chains},
                 {"route_disagreements", disagreements},
                 {"exploratory_checks", exploratory}};
    r.text.insert(r.text.begin(),
                  fmt::format("verify-theorems: {} configurations, {} chains, passed {}, failed {}, inconclusive {}, "
                              "route disagreements {}, exploratory {}",
                              list.size(), chains, r.summary.passed, r.summary.failed, r.summary.inconclusive,
                              disagreements, exploratory));
    r.exit_code = hard_failures > 0 ? ExitCode::violation : ExitCode::ok;
    return r;
}

}  // namespace

RunReport cmd_verify(const RunConfig& c) {
    if (c.command == "verify-lemmas") return verify_lemmas(c);
    if (c.command == "verify-theorems") return verify_theorems(c);
    throw DomainError("cmd_verify handles verify-lemmas and verify-theorems, got '" + c.command + "'");
}

// ---------------------------------------------------------------------------
// limits

std::vector<LimitPath> limit_paths(const SeriesBudget& budget) {
    std::vector<LimitPath> paths;
    const auto classical = [](double t) { return log_gamma_classical(EvalPoint{t}).log_value; };
    const auto finish = [](LimitPath& path) {
        path.strictly_decreasing = true;
        for (std::size_t i = 1; i < path.rows.size(); ++i)
            if (!(path.rows[i].error < path.rows[i - 1].error)) path.strictly_decreasing = false;
    };

    for (double t : {0.5, 1.5, 3.2}) {
        LimitPath path{"gamma_p", t, {}, false, false};
        for (std::int64_t p = 64; p <= 4096; p *= 2)
            path.rows.push_back({"gamma_p", fmt::format("p={}", p), t,
                                 std::fabs(log_gamma_p(p, EvalPoint{t}).log_value - classical(t))});
        finish(path);
        paths.push_back(path);
    }
    {
        const double t = 1.5;
        LimitPath path{"gamma_q", t, {}, false, false};
        for (double q : {0.9, 0.99, 0.999})
            path.rows.push_back({"gamma_q", fmt::format("q={:g}", q), t,
                                 std::fabs(log_gamma_q(q, EvalPoint{t}, budget).log_value - classical(t))});
        finish(path);
        paths.push_back(path);
    }
    {
        const double t = 1.5;
        LimitPath path{"gamma_k", t, {}, false, false};
        for (double k : {2.0, 1.5, 1.1, 1.01, 1.0})
            path.rows.push_back({"gamma_k", fmt::format("k={:g}", k), t,
                                 std::fabs(log_gamma_k(k, EvalPoint{t}).log_value - classical(t))});
        finish(path);
        path.exact_zero_at_end = path.rows.back().error == 0.0;
        paths.push_back(path);
    }
    {
        const double t = 1.5;
        LimitPath path{"gamma_pq", t, {}, false, false};
        // p grows like 1/(1-q) so that q^p stays small along the path.
        const std::pair<std::int64_t, double> steps[] = {{64, 0.9}, {1024, 0.99}, {16384, 0.999}, {262144, 0.9999}};
        for (const auto& [p, q] : steps)
            path.rows.push_back({"gamma_pq", fmt::format("p={},q={:g}", p, q), t,
                                 std::fabs(log_gamma_pq(p, q, EvalPoint{t}).log_value - classical(t))});
        finish(path);
        paths.push_back(path);
    }
    {
        const double t = 1.5;
        LimitPath path{"gamma_qk", t, {}, false, false};
        const std::pair<double, double> steps[] = {{0.9, 1.5}, {0.99, 1.1}, {0.999, 1.01}, {0.9999, 1.001}};
        for (const auto& [q, k] : steps)
            path.rows.push_back({"gamma_qk", fmt::format("q={:g},k={:g}", q, k), t,
                                 std::fabs(log_gamma_qk(q, k, EvalPoint{t}, budget).log_value - classical(t))});
        finish(path);
        paths.push_back(path);
    }
    return paths;
}

RunReport cmd_limits(const RunConfig& c) {
    RunReport r = start(c);
    const auto paths = limit_paths(c.budget);
    r.results = json::array();
    r.csv = "family,parameter,t,abs_log_error\n";
    for (const auto& path : paths) {
        json rows = json::array();
        for (const auto& row : path.rows) {
            rows.push_back({{"parameter", row.parameter}, {"error", row.error}});
            r.csv += fmt::format("{},\"{}\",{},{}\n", row.family, row.parameter, num(row.t), num(row.error));
        }
        json j{{"family", path.family}, {"t", path.t}, {"rows", rows}, {"strictly_decreasing", path.strictly_decreasing}};
        if (path.family == "gamma_k") j["exact_zero_at_classical_point"] = path.exact_zero_at_end;
        r.results.push_back(j);

        const bool ok = path.strictly_decreasing && (path.family != "gamma_k" || path.exact_zero_at_end);
        if (ok) ++r.summary.passed;
        else ++r.summary.failed;
        std::string line = fmt::format("{} t={:g}:", path.family, path.t);
        for (const auto& row : path.rows) line += fmt::format(" {}:{:.3e}", row.parameter, row.error);
        r.text.push_back(line + (ok ? "  decreasing" : "  NOT DECREASING"));
    }
    r.exit_code = r.summary.failed > 0 ? ExitCode::violation : ExitCode::ok;
    return r;
}

// ---------------------------------------------------------------------------
// explore

RunReport cmd_explore(const RunConfig& c) {
    RunReport r = start(c);
    const Problem problem = parse_problem(c.target.empty() ? "P1" : c.target);
    std::vector<Axis> axes = default_axes(problem);
    std::set<std::string> used;
    for (auto& a : axes) {
        if (auto it = c.ranges.find(a.name); it != c.ranges.end()) {
            a = parse_axis(a.name, it->second, a.integer);
            used.insert(a.name);
        }
    }
    for (const auto& [name, text] : c.ranges)
        if (!used.contains(name))
            throw DomainError("problem " + std::string(to_string(problem)) + " has no axis '" + name + "'");
    if (c.max_points) axes = shrink_axes(axes, *c.max_points);

    const RegionMap map = scan(problem, axes, c.budget, c.workers);
    r.results = to_json(map);
    r.csv = to_csv(map);
    for (const Cell& cell : map.cells) {
        switch (cell.verdict) {
            case Verdict::certified_positive:
            case Verdict::certified_nonpositive: ++r.summary.passed; break;
            case Verdict::inconclusive: ++r.summary.inconclusive; break;
        }
    }
    r.text.push_back(fmt::format("explore {}: {} cells, {} positive, {} nonpositive, {} inconclusive, {} boundaries",
                                 to_string(problem), map.cells.size(),
                                 r.results["counts"]["certified_positive"].get<std::int64_t>(),
                                 r.results["counts"]["certified_nonpositive"].get<std::int64_t>(),
                                 r.results["counts"]["inconclusive"].get<std::int64_t>(), map.boundaries.size()));
    for (const Boundary& b : map.boundaries) {
        std::string coords;
        for (std::size_t i = 0; i < b.coords.size(); ++i)
            coords += fmt::format("{}{}={:.10g}", i ? " " : "", map.axes[i].name, b.coords[i]);
        r.text.push_back(fmt::format("  boundary along {}: {} ({} below, {} above)", map.axes[b.axis].name, coords,
                                     to_string(b.lower_verdict), to_string(b.upper_verdict)));
    }
    return r;
}

// ---------------------------------------------------------------------------

RunReport run(const RunConfig& config) {
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    RunReport r;
    if (config.command == "eval") r = cmd_eval(config);
    else if (config.command == "limits") r = cmd_limits(config);
    else if (config.command == "explore") r = cmd_explore(config);
    else r = cmd_verify(config);
    r.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

json to_json(const RunReport& r, bool timing) {
    json j{{"tool", "genzgamma"},
           {"version", GENZGAMMA_VERSION},
           {"command", r.command},
           {"config", r.config},
           {"summary", {{"passed", r.summary.passed}, {"failed", r.summary.failed}, {"inconclusive", r.summary.inconclusive}}},
           {"exit_code", static_cast<int>(r.exit_code)},
           {"results", r.results}};
    if (timing) j["wall_clock_seconds"] = r.wall_clock_seconds;
    return j;
}

std::string render(const RunReport& r, OutputFormat format, bool timing) {
    switch (format) {
        case OutputFormat::json: return to_json(r, timing).dump(2) + "\n";
        case OutputFormat::csv: return r.csv;
        case OutputFormat::text: {
            std::string s;
            for (const auto& line : r.text) s += line + "\n";
            if (timing) s += fmt::format("wall clock: {:.3f} s\n", r.wall_clock_seconds);
            return s;
        }
    }
    return {};
}

void write_outputs(const RunReport& r, const std::string& prefix, bool timing) {
    const auto write = [](const std::string& path, const std::string& body) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw DomainError("cannot write '" + path + "'");
        f << body;
        if (!f) throw DomainError("failed writing '" + path + "'");
    };
    write(prefix + ".json", render(r, OutputFormat::json, timing));
    write(prefix + ".csv", render(r, OutputFormat::csv, timing));
}

}  // namespace genzgamma
