#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "genzgamma/theorems.hpp"
#include "oracles.hpp"
#include "random_params.hpp"

using namespace genzgamma;

namespace {

TheoremParams make(AuxFunction f, double l, double m, std::optional<std::int64_t> p, std::optional<double> q,
                   std::optional<double> k, GFunction g) {
    TheoremParams tp;
    tp.function = f;
    tp.scales = (f == AuxFunction::G || f == AuxFunction::H) ? ScalePair(l, m, Ordering::lambda_ge_mu) : ScalePair(l, m);
    if (p) tp.params.with_p(*p);
    if (q) tp.params.with_q(*q);
    if (k) tp.params.with_k(*k);
    tp.g = g;
    return tp;
}

const GFunction one_plus_t = GFunction::affine(1.0, 1.0);

}  // namespace

TEST(Theorems, Naming) {
    EXPECT_EQ(aux_for_theorem(3), AuxFunction::S);
    EXPECT_EQ(theorem_for(AuxFunction::H), 2);
    EXPECT_FALSE(expects_increasing(AuxFunction::G));
    EXPECT_TRUE(expects_increasing(AuxFunction::T));
    EXPECT_THROW((void)aux_for_theorem(5), DomainError);
}

TEST(Theorems, LogGExamples) {
    const ScalePair s(1, 1, Ordering::lambda_ge_mu);
    const auto a = log_G(0, s, 5, 0.5, one_plus_t), b = log_G(1, s, 5, 0.5, one_plus_t), c = log_G(2, s, 5, 0.5, one_plus_t);
    EXPECT_GE(a.log_value, b.log_value);
    EXPECT_GE(b.log_value, c.log_value);
    for (double t = 0; t <= 100; t += 0.5) EXPECT_TRUE(std::isfinite(log_G(t, s, 5, 0.5, one_plus_t).log_value));
}

TEST(Theorems, LogHConstantAtKOne) {
    const ScalePair s(1.5, 1.5, Ordering::lambda_ge_mu);
    const double h0 = log_H(0, s, 0.5, 1.0, one_plus_t).log_value;
    for (double t : {0.5, 1.0, 4.0, 16.0}) {
        const auto v = log_H(t, s, 0.5, 1.0, one_plus_t);
        EXPECT_NEAR(v.log_value, h0, 2 * v.tail_bound + 1e-12);
    }
    auto tp = make(AuxFunction::H, 1, 1, {}, 0.5, 2.0, one_plus_t);
    EXPECT_EQ(certify_monotone(tp, default_t_grid()).verdict, MonotoneVerdict::certified_monotone);
}

TEST(Theorems, SAndTIncreasing) {
    auto s = make(AuxFunction::S, 1, 1, 5, 0.5, 1.0, one_plus_t);
    const std::vector<double> ts{0, 0.5, 1, 2, 4};
    for (std::size_t i = 1; i < ts.size(); ++i)
        EXPECT_LT(evaluate_aux(s, ts[i - 1]).log_value, evaluate_aux(s, ts[i]).log_value);
    auto t = make(AuxFunction::T, 1, 1, {}, 0.5, 2.0, one_plus_t);
    EXPECT_EQ(certify_monotone(t, default_t_grid()).verdict, MonotoneVerdict::certified_monotone);
    t.g = GFunction::exponential_saturating(1.0, 1.0);
    EXPECT_EQ(certify_monotone(t, default_t_grid()).verdict, MonotoneVerdict::certified_monotone);
}

TEST(Theorems, Preconditions) {
    EXPECT_THROW(GFunction::affine(1.0, 0.0), DomainError);
    EXPECT_THROW(ScalePair(0.0, 1.0), DomainError);  // lambda = 0 for S
    auto tp = make(AuxFunction::G, 1, 1, 5, 0.5, {}, one_plus_t);
    const std::vector<double> short_grid{0, 1, 2};
    EXPECT_THROW(certify_monotone(tp, short_grid), DomainError);
    const std::vector<double> no_zero{0.5, 1, 2, 3, 4, 5, 6, 7};
    EXPECT_THROW(certify_monotone(tp, no_zero), DomainError);
    auto missing = make(AuxFunction::G, 1, 1, {}, 0.5, {}, one_plus_t);
    EXPECT_THROW(validate(missing), DomainError);
    auto hk = make(AuxFunction::H, 1, 1, {}, 0.5, 0.5, one_plus_t);
    EXPECT_THROW(validate(hk), DomainError);
    EXPECT_THROW(verify_chain(1, 2.0, 1.0, tp), DomainError);
}

TEST(Theorems, DerivativeIdentityRandom) {
    std::mt19937_64 rng(200);
    std::uniform_real_distribution<double> td(0.05, 5.0);
    for (auto f : {AuxFunction::G, AuxFunction::H, AuxFunction::S, AuxFunction::T})
        for (int i = 0; i < 200; ++i) {
            const auto tp = testing_support::random_theorem_params(f, rng);
            const double t = td(rng);
            const double fd = oracle::central_difference([&](double s) { return evaluate_aux(tp, s).log_value; }, t);
            EXPECT_NEAR(fd, aux_log_derivative(tp, t).value, 1e-6) << to_string(f) << " t=" << t;
        }
}

TEST(Theorems, CertifyDefaultParams) {
    auto g = make(AuxFunction::G, 1, 1, 5, 0.5, {}, one_plus_t);
    EXPECT_EQ(certify_monotone(g, default_t_grid()).verdict, MonotoneVerdict::certified_monotone);
}

TEST(Theorems, OutOfHypothesisG) {
    auto tp = make(AuxFunction::G, 1, 1, 1, 0.5, {}, one_plus_t);
    tp.scales = ScalePair(0.1, 5.0);
    EXPECT_THROW(certify_monotone(tp, default_t_grid()), DomainError);
    tp.enforce_hypotheses = false;
    const auto w = certify_monotone(tp, default_t_grid());
    if (w.verdict == MonotoneVerdict::violation) {
        ASSERT_TRUE(w.violation.has_value());
        EXPECT_LT(w.violation->first, w.violation->second);
    }
}

TEST(Theorems, ChainExamples) {
    auto g = make(AuxFunction::G, 1, 1, 5, 0.5, {}, one_plus_t);
    auto c = verify_chain(1, 0.5, 1.5, g);
    EXPECT_EQ(c.verdict, MonotoneVerdict::certified_monotone);
    EXPECT_GT(c.margin_left, 0.0);
    EXPECT_GT(c.margin_right, 0.0);
    EXPECT_EQ(c.monotone_route_verdict, c.verdict);

    auto t = make(AuxFunction::T, 1, 1, {}, 0.5, 2.0, one_plus_t);
    c = verify_chain(4, 1.0, 2.0, t);
    EXPECT_EQ(c.verdict, MonotoneVerdict::certified_monotone);
    EXPECT_LT(c.left_log, c.mid_log);
    EXPECT_LT(c.mid_log, c.right_log);

    // Margins shrink with y - x.
    double prev = INFINITY;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const auto d = verify_chain(1, 1.0 - eps, 1.0, g);
        EXPECT_LT(d.margin_right, prev);
        prev = d.margin_right;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(Theorems, ChainMatchesWitnessOrdering) {
    std::mt19937_64 rng(9);
    for (auto f : {AuxFunction::G, AuxFunction::H, AuxFunction::S, AuxFunction::T})
        for (int i = 0; i < 30; ++i) {
            const auto tp = testing_support::random_theorem_params(f, rng);
            const std::vector<double> ts{0.0, 0.7, 2.1};
            std::vector<LogSample> samples;
            for (double t : ts) samples.push_back(evaluate_aux(tp, t));
            const auto c = verify_chain(theorem_for(f), ts[1], ts[2], tp);
            EXPECT_EQ(c.verdict, order_verdict(f, samples));
            EXPECT_EQ(c.verdict, c.monotone_route_verdict);
        }
}

TEST(Theorems, DefaultSuite) {
    SuiteOptions opt;
    opt.workers = 8;
    const auto checks = run_theorem_suite(default_theorem_grid(), opt);
    EXPECT_GT(checks.size(), 0u);
    for (const auto& c : checks) {
        EXPECT_EQ(c.status, CheckStatus::passed);
        EXPECT_TRUE(c.routes_agree);
        for (const auto& ch : c.chains) EXPECT_EQ(ch.verdict, MonotoneVerdict::certified_monotone);
    }
}

TEST(Theorems, AffineUnitIntervalSuite) {
    SuiteOptions opt;
    opt.workers = 8;
    const auto grid = affine_unit_interval_grid();
    for (double t : grid.t_grid) {
        EXPECT_GE(t, 0.0);
        EXPECT_LT(t, 1.0);
    }
    bool has_unit_lambda_mu = false;
    for (const auto& lm : grid.ordered_pairs) has_unit_lambda_mu |= lm.lambda == 1.0 && lm.mu == 1.0;
    EXPECT_TRUE(has_unit_lambda_mu);
    for (const auto& c : run_theorem_suite(grid, opt)) {
        EXPECT_EQ(c.status, CheckStatus::passed);
        EXPECT_TRUE(c.routes_agree);
    }
}
