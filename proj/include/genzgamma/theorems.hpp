#pragma once

// Monotone auxiliary functions behind the four double inequalities and the
// inequality chains themselves, all in log space.
//
//   G(t) = (1-q)^(lg) Gamma_q(g)^l / ([p]_q^(-mg) Gamma_(p,q)(g)^m)          non-increasing
//   H(t) = (1-q)^(lg) Gamma_q(g)^l / ((1-q)^(mg/k) Gamma_(q,k)(g)^m)       non-increasing
//   S(t) = g^l k^(-lg/k) e^(l gamma g/k) Gamma_k(g)^l / ([p]_q^(-mg) Gamma_(p,q)(g)^m)  increasing
//   T(t) = g^l e^(l gamma g/k) Gamma_k(g)^l / (k^(lg/k) (1-q)^(mg/k) Gamma_(q,k)(g)^m) increasing
//
// with g = g(t), l = lambda, m = mu. The chain for 0 < x < y compares the
// function at 0, x and y after dividing out the common factors.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "genzgamma/lemmas.hpp"
#include "genzgamma/types.hpp"

namespace genzgamma {

enum class AuxFunction { G = 1, H = 2, S = 3, T = 4 };

[[nodiscard]] std::string_view to_string(AuxFunction f) noexcept;
[[nodiscard]] AuxFunction aux_for_theorem(int theorem_id);
[[nodiscard]] int theorem_for(AuxFunction f) noexcept;

/// G and H are non-increasing, S and T strictly increasing.
[[nodiscard]] bool expects_increasing(AuxFunction f) noexcept;

struct TheoremParams {
    AuxFunction function = AuxFunction::G;
    ScalePair scales{1.0, 1.0, Ordering::lambda_ge_mu};
    ParamSet params;  // p, q for G; q, k for H; k, p, q for S; q, k for T
    GFunction g = GFunction::affine(1.0, 1.0);
    SeriesBudget budget{};
    /// When false, lambda >= mu (G, H) and k >= 1 (H) are not enforced.
    bool enforce_hypotheses = true;
};

/// Throws DomainError if the parameters miss a required member or violate
/// the theorem's hypotheses.
void validate(const TheoremParams& params);

/// log of an auxiliary function at t, its truncation bound, and the summed
/// magnitude of its components.
struct LogSample {
    double t = 0.0;
    double log_value = 0.0;
    double tail_bound = 0.0;
    double magnitude = 0.0;
};

LogSample log_G(double t, const ScalePair& s, std::int64_t p, double q, const GFunction& g,
                const SeriesBudget& budget = {});
LogSample log_H(double t, const ScalePair& s, double q, double k, const GFunction& g,
                const SeriesBudget& budget = {});
LogSample log_S(double t, const ScalePair& s, double k, std::int64_t p, double q, const GFunction& g,
                const SeriesBudget& budget = {});
LogSample log_T(double t, const ScalePair& s, double q, double k, const GFunction& g,
                const SeriesBudget& budget = {});

/// Dispatches to log_G/H/S/T after validating the parameters.
LogSample evaluate_aux(const TheoremParams& params, double t);

/// g'(t) times the matching lemma expression at g(t). This is the exact
/// log-derivative of the auxiliary function, so the (p,q) digamma enters in
/// its definitional form.
Expression aux_log_derivative(const TheoremParams& params, double t);

enum class MonotoneVerdict { certified_monotone, violation, inconclusive };

[[nodiscard]] std::string_view to_string(MonotoneVerdict v) noexcept;

struct MonotoneWitness {
    AuxFunction function = AuxFunction::G;
    TheoremParams params;
    std::vector<LogSample> samples;
    MonotoneVerdict verdict = MonotoneVerdict::inconclusive;
    std::optional<std::pair<double, double>> violation;  // (t1, t2) of the first violating pair
};

/// {0, 0.25, 0.5, 1, 2, 4, 8, 16}
[[nodiscard]] std::vector<double> default_t_grid();

/// Slack used when comparing two samples: their tail bounds plus round-off.
[[nodiscard]] double comparison_slack(const LogSample& a, const LogSample& b) noexcept;

/// Ordering verdict for samples in increasing t, from consecutive pairs.
/// For non-increasing functions a rise beyond the slack is a violation; for
/// increasing ones a drop beyond the slack is a violation and a rise within
/// the slack is inconclusive.
[[nodiscard]] MonotoneVerdict order_verdict(AuxFunction f, std::span<const LogSample> samples,
                                            std::optional<std::pair<double, double>>* violation = nullptr);

/// Requires a strictly increasing grid of at least 8 points starting at 0.
MonotoneWitness certify_monotone(const TheoremParams& params, std::span<const double> t_grid);

struct ChainCertificate {
    int theorem_id = 1;
    double x = 0.0;
    double y = 0.0;
    double left_log = 0.0;
    double mid_log = 0.0;
    double right_log = 0.0;
    /// Gaps in the asserted direction: (left - mid, mid - right) for
    /// theorems 1-2, (mid - left, right - mid) for theorems 3-4.
    double margin_left = 0.0;
    double margin_right = 0.0;
    double slack_left = 0.0;
    double slack_right = 0.0;
    MonotoneVerdict verdict = MonotoneVerdict::inconclusive;
    /// Same comparison through the auxiliary function at 0, x, y.
    MonotoneVerdict monotone_route_verdict = MonotoneVerdict::inconclusive;
};

/// Evaluates the displayed chain at (0, x, y) and, independently, the
/// auxiliary function at 0, x, y. Throws InconsistentForms if the two
/// routes' gaps differ beyond round-off and tail bounds.
ChainCertificate verify_chain(int theorem_id, double x, double y, const TheoremParams& params);

// ---------------------------------------------------------------------------
// Grid certification

struct TheoremGrid {
    std::vector<LambdaMu> ordered_pairs;  // theorems 1-2
    std::vector<LambdaMu> free_pairs;     // theorems 3-4
    std::vector<std::int64_t> p_values;
    std::vector<double> q_values;
    std::vector<double> k_values_ge1;     // theorem 2
    std::vector<double> k_values_free;    // theorems 3-4
    std::vector<GFunction> g_functions;
    std::vector<double> t_grid;
};

/// Lemma-grid parameters with g in {affine(1,1), affine(0.5,2),
/// affine(2,0.5), affine_unit_slope(0.5), affine_unit_slope(1),
/// exponential_saturating(1,1)} on default_t_grid().
[[nodiscard]] TheoremGrid default_theorem_grid();

/// g(t) = alpha + beta t with t restricted to [0, 1), plus g(t) = alpha + t
/// with lambda = mu = 1: grid {0, 1/8, ..., 7/8}.
[[nodiscard]] TheoremGrid affine_unit_interval_grid();

struct TheoremCheck {
    MonotoneWitness witness;
    std::vector<ChainCertificate> chains;  // every x < y from the grid (x > 0)
    CheckStatus status = CheckStatus::inconclusive;
    bool exploratory = false;
    bool routes_agree = true;  // chain verdicts equal the witness ordering at {0, x, y}
};

[[nodiscard]] std::vector<TheoremCheck> run_theorem_suite(const TheoremGrid& grid, const SuiteOptions& options);

}  // namespace genzgamma
