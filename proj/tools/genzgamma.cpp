// genzgamma: evaluate generalized Gamma/psi functions, certify the lemma and
// theorem suites, tabulate limits and scan the open-problem expressions.
//
// Exit codes: 0 ok, 1 certified violation or inconsistent forms,
// 2 invalid input, 3 series budget exhausted.

#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "genzgamma/kernels.hpp"
#include "genzgamma/report.hpp"

namespace {

unsigned default_workers() {
    if (const char* env = std::getenv("GENZGAMMA_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
        throw genzgamma::DomainError(std::string("GENZGAMMA_WORKERS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int fail(genzgamma::ExitCode code, const std::string& message) {
    std::cerr << "genzgamma: " << message << "\n";
    return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
    using namespace genzgamma;

    CLI::App app{"Generalized Gamma function inequalities: evaluation, certification and exploration"};
    app.set_version_flag("--version", std::string(GENZGAMMA_VERSION));

    RunConfig cfg;
    std::int64_t p = 0;
    double q = 0, k = 0, lambda = 0, mu = 0, alpha = 0, beta = 0;
    std::string g_family, format = "text", isa;
    double tail_tol = SeriesBudget::kDefaultTailTol;
    std::int64_t max_terms = SeriesBudget::kDefaultMaxTerms;
    std::int64_t max_points = 0;
    unsigned workers = 0;
    std::string p_range, q_range, k_range, t_range, out;

    app.add_option("command", cfg.command, "eval | verify-lemmas | verify-theorems | limits | explore")->required();
    app.add_option("target", cfg.target, "function name for eval (gamma_p, psi_q, ...), P1 or P2 for explore");

    auto* o_p = app.add_option("--p", p, "integer parameter p >= 1");
    auto* o_q = app.add_option("--q", q, "q in (0, 1)");
    auto* o_k = app.add_option("--k", k, "k > 0");
    app.add_option("--t", cfg.t, "evaluation point(s) t > 0; g(t) values for verify-lemmas")->delimiter(',');
    auto* o_lambda = app.add_option("--lambda", lambda, "exponent lambda > 0");
    auto* o_mu = app.add_option("--mu", mu, "exponent mu > 0");
    auto* o_g = app.add_option("--g", g_family, "g family: affine | affine_unit_slope | exponential_saturating");
    auto* o_alpha = app.add_option("--alpha", alpha, "g(0) > 0");
    auto* o_beta = app.add_option("--beta", beta, "g slope/scale > 0");
    app.add_option("--tail-tol", tail_tol, "absolute series tail tolerance")->capture_default_str();
    app.add_option("--max-terms", max_terms, "series term cap")->capture_default_str();
    app.add_option("--format", format, "json | csv | text")->capture_default_str();
    auto* o_out = app.add_option("--out", out, "also write <prefix>.json and <prefix>.csv");
    auto* o_workers = app.add_option("--workers", workers, "worker threads (default: GENZGAMMA_WORKERS or all cores)");
    app.add_flag("--allow-out-of-hypothesis", cfg.allow_out_of_hypothesis,
                 "run parameters outside the lemma/theorem hypotheses as exploratory checks");
    auto* o_pr = app.add_option("--p-range", p_range, "explore axis lo:hi:steps[:log]");
    auto* o_qr = app.add_option("--q-range", q_range, "explore axis lo:hi:steps[:log]");
    auto* o_kr = app.add_option("--k-range", k_range, "explore axis lo:hi:steps[:log]");
    auto* o_tr = app.add_option("--t-range", t_range, "explore axis lo:hi:steps[:log]");
    auto* o_mp = app.add_option("--max-points", max_points, "shrink explore axes to at most this many cells");
    app.add_flag("--paper-literal", cfg.paper_literal, "eval gamma_q with the product index started at n = 1");
    app.add_flag("--timing", cfg.timing, "include wall-clock time in reports");
    auto* o_isa = app.add_option("--isa", isa, "kernel variant: scalar | avx2 (default: best available)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::invalid_input);
    }

    try {
        if (*o_p) cfg.p = p;
        if (*o_q) cfg.q = q;
        if (*o_k) cfg.k = k;
        if (*o_lambda) cfg.lambda = lambda;
        if (*o_mu) cfg.mu = mu;
        if (*o_g) cfg.g_family = g_family;
        if (*o_alpha) cfg.alpha = alpha;
        if (*o_beta) cfg.beta = beta;
        if (*o_out) cfg.out = out;
        if (*o_mp) cfg.max_points = max_points;
        if (*o_pr) cfg.ranges["p"] = p_range;
        if (*o_qr) cfg.ranges["q"] = q_range;
        if (*o_kr) cfg.ranges["k"] = k_range;
        if (*o_tr) cfg.ranges["t"] = t_range;
        cfg.budget = SeriesBudget(tail_tol, max_terms);
        cfg.format = parse_format(format);
        cfg.workers = *o_workers ? workers : default_workers();
        if (*o_isa) {
            if (isa == "scalar") kernels::set_active_isa(kernels::Isa::scalar);
            else if (isa == "avx2") kernels::set_active_isa(kernels::Isa::avx2);
            else throw DomainError("unknown --isa '" + isa + "' (scalar, avx2)");
        }

        const RunReport report = run(cfg);
        std::cout << render(report, cfg.format, cfg.timing);
        if (cfg.out) write_outputs(report, *cfg.out, cfg.timing);
        return static_cast<int>(report.exit_code);
    } catch (const BudgetExceeded& e) {
        return fail(ExitCode::budget_exceeded, e.what());
    } catch (const InconsistentForms& e) {
        return fail(ExitCode::violation, e.what());
    } catch (const DomainError& e) {
        return fail(ExitCode::invalid_input, e.what());
    } catch (const std::exception& e) {
        return fail(ExitCode::invalid_input, e.what());
    }
}
