#pragma once

// Sign statements for linear combinations of generalized digamma values.
//
// Each lemma expression is evaluated two ways:
//   direct    - composed from the psi evaluators and the constant terms;
//   collapsed - the single series the constants cancel into, whose
//               summands all share one sign.
// The verdict comes from the collapsed form; the two must agree within
// their combined tail bounds plus round-off.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "genzgamma/types.hpp"

namespace genzgamma {

enum class Ordering { lambda_ge_mu, free };

/// Exponent pair (lambda, mu), both positive.
class ScalePair {
public:
    ScalePair(double lambda, double mu, Ordering ordering = Ordering::free);

    [[nodiscard]] double lambda() const noexcept { return lambda_; }
    [[nodiscard]] double mu() const noexcept { return mu_; }
    [[nodiscard]] Ordering ordering() const noexcept { return ordering_; }

private:
    double lambda_;
    double mu_;
    Ordering ordering_;
};

enum class GFamily { affine, affine_unit_slope, exponential_saturating };

[[nodiscard]] std::string_view to_string(GFamily family) noexcept;
[[nodiscard]] GFamily parse_gfamily(std::string_view name);

/// Positive, strictly increasing, differentiable g on [0, inf):
///   affine                 alpha + beta t
///   affine_unit_slope      alpha + t
///   exponential_saturating alpha + beta (1 - e^-t)
class GFunction {
public:
    static GFunction affine(double alpha, double beta);
    static GFunction affine_unit_slope(double alpha);
    static GFunction exponential_saturating(double alpha, double beta);

    [[nodiscard]] double operator()(double t) const;
    [[nodiscard]] double derivative(double t) const;

    [[nodiscard]] GFamily family() const noexcept { return family_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] std::string label() const;

private:
    GFunction(GFamily family, double alpha, double beta);

    GFamily family_;
    double alpha_;
    double beta_;
};

enum class Verdict { certified_nonpositive, certified_positive, inconclusive };

[[nodiscard]] std::string_view to_string(Verdict v) noexcept;

/// positive when value - bound > 0; nonpositive when value + bound < 0 or
/// value and bound are both exactly zero; inconclusive otherwise.
[[nodiscard]] Verdict classify_sign(double value, double bound) noexcept;

/// Round-off allowance for a quantity assembled from terms whose absolute
/// values sum to `magnitude`.
[[nodiscard]] double roundoff_allowance(double magnitude) noexcept;

struct NamedValue {
    std::string name;
    double value = 0.0;
};

struct SignCertificate {
    std::string check;
    std::vector<NamedValue> inputs;
    double value = 0.0;  // collapsed / stated-series form, drives the verdict
    double tail_bound = 0.0;
    double direct_value = 0.0;  // composed from the psi evaluators
    double direct_tail_bound = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

/// Which (p,q)-digamma a lemma expression uses.
enum class PsiPqForm { series, definitional };

/// Direct-form value of an expression, with its truncation bound and the
/// summed magnitude of its components (for round-off allowances).
struct Expression {
    double value = 0.0;
    double tail_bound = 0.0;
    double magnitude = 0.0;
};

enum class LemmaId { lemma1 = 1, lemma2 = 2, lemma3 = 3, lemma4 = 4 };

[[nodiscard]] std::string_view to_string(LemmaId id) noexcept;

/// Sign the lemma asserts: nonpositive for 1 and 2, positive for 3 and 4.
[[nodiscard]] Verdict expected_verdict(LemmaId id) noexcept;

// lambda ln(1-q) + mu ln[p]_q + lambda psi_q(g) - mu psi_(p,q)(g)
Expression lemma1_expression(const ScalePair& s, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget = {}, PsiPqForm form = PsiPqForm::series);
// lambda ln(1-q) - mu ln(1-q)/k + lambda psi_q(g) - mu psi_(q,k)(g)
Expression lemma2_expression(const ScalePair& s, double q, double k, double gt,
                             const SeriesBudget& budget = {});
// mu ln[p]_q - lambda ln k / k + lambda gamma / k + lambda / g + lambda psi_k(g) - mu psi_(p,q)(g)
Expression lemma3_expression(const ScalePair& s, double k, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget = {}, PsiPqForm form = PsiPqForm::series);
// lambda gamma / k + lambda / g - ln(k^lambda (1-q)^mu) / k + lambda psi_k(g) - mu psi_(q,k)(g)
Expression lemma4_expression(const ScalePair& s, double q, double k, double gt,
                             const SeriesBudget& budget = {});

// Certificates. With enforce_hypotheses, lemmas 1 and 2 require a pair
// built with Ordering::lambda_ge_mu and lemma 2 requires k >= 1. Throws
// InconsistentForms when direct and collapsed values disagree.
SignCertificate lemma1_value(const ScalePair& s, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget = {}, bool enforce_hypotheses = true);
SignCertificate lemma2_value(const ScalePair& s, double q, double k, double gt,
                             const SeriesBudget& budget = {}, bool enforce_hypotheses = true);
SignCertificate lemma3_value(const ScalePair& s, double k, std::int64_t p, double q, double gt,
                             const SeriesBudget& budget = {});
SignCertificate lemma4_value(const ScalePair& s, double q, double k, double gt,
                             const SeriesBudget& budget = {});

// ---------------------------------------------------------------------------
// Grid certification

struct LambdaMu {
    double lambda;
    double mu;
};

struct LemmaGrid {
    std::vector<std::int64_t> p_values;
    std::vector<double> q_values;
    std::vector<double> k_values_ge1;    // lemma 2
    std::vector<double> k_values_free;   // lemmas 3 and 4
    std::vector<LambdaMu> ordered_pairs; // lemmas 1 and 2
    std::vector<LambdaMu> free_pairs;    // lemmas 3 and 4
    std::vector<double> gt_values;
};

/// p in {1,2,5,10,50}, q in {0.1,...,0.9}, k in {1,1.5,2,5} (lemma 2) or
/// {0.25,0.5,1,1.5,2,5}, (lambda,mu) in {(1,1),(2,1),(1,0.5),(5,0.1)} plus
/// {(0.5,1),(0.1,5)} where unordered pairs are allowed, g in {0.1,0.5,1,2,10}.
[[nodiscard]] LemmaGrid default_lemma_grid();

enum class CheckStatus { passed, failed, inconclusive };

[[nodiscard]] std::string_view to_string(CheckStatus s) noexcept;

struct LemmaCheck {
    LemmaId lemma = LemmaId::lemma1;
    SignCertificate certificate;
    CheckStatus status = CheckStatus::inconclusive;
    bool exploratory = false;  // evaluated outside the lemma's hypotheses
};

struct SuiteOptions {
    SeriesBudget budget{};
    unsigned workers = 1;
    bool allow_out_of_hypothesis = false;
};

/// Certifies all four lemmas over the grid, in deterministic order
/// (lemma, then the grid's nested loops). Ordered pairs with lambda < mu
/// and lemma-2 k values below 1 throw DomainError unless
/// allow_out_of_hypothesis is set; then they run and are marked exploratory.
[[nodiscard]] std::vector<LemmaCheck> run_lemma_suite(const LemmaGrid& grid, const SuiteOptions& options);

/// Lemma 1 evaluated with lambda < mu over the grid's p, q and g values.
/// Positive verdicts show that the ordering hypothesis is needed.
[[nodiscard]] std::vector<SignCertificate> lemma1_necessity_probe(const LemmaGrid& grid,
                                                                  const SuiteOptions& options);

}  // namespace genzgamma
