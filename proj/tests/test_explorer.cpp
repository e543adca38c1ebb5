#include <cmath>

#include <gtest/gtest.h>

#include "genzgamma/explorer.hpp"
#include "oracles.hpp"

using namespace genzgamma;

namespace {

void expect_forms_agree(const SignCertificate& c) {
    const double mag = 1.0 + std::fabs(c.value) + std::fabs(c.direct_value);
    EXPECT_LE(std::fabs(c.value - c.direct_value), c.tail_bound + c.direct_tail_bound + 1e-12 * mag);
}

// Re-probe a boundary at location -/+ offset along its axis.
std::pair<Verdict, Verdict> reprobe(const RegionMap& m, const Boundary& b, double offset) {
    auto lo = b.coords, hi = b.coords;
    if (m.axes[b.axis].integer) {
        lo[b.axis] = b.lower;
        hi[b.axis] = b.upper;
    } else {
        lo[b.axis] = b.location - offset;
        hi[b.axis] = b.location + offset;
    }
    return {evaluate_problem(m.problem, lo, {}).verdict, evaluate_problem(m.problem, hi, {}).verdict};
}

}  // namespace

TEST(Problem1, Examples) {
    auto c = problem1_value(1, 0.5, 1.0);
    const double ref = static_cast<double>(1.5L + std::log(0.5L) * oracle::qratio_brute(0.5L, 0.5L));
    EXPECT_NEAR(c.value, ref, c.tail_bound + 1e-14);
    expect_forms_agree(c);
    EXPECT_EQ(c.verdict, classify_sign(ref, 1e-12));

    c = problem1_value(3, 0.5, 100.0);
    EXPECT_EQ(c.verdict, Verdict::certified_positive);
    EXPECT_LT(c.value, 4.0 / 100.0);

    c = problem1_value(10, 0.99, 1.0);
    expect_forms_agree(c);
}

TEST(Problem2, KOneIsPositive) {
    // (ln q)(S_p - S_inf) = -(ln q) sum_{n>p} q^(nt)/(1-q^n) > 0.
    for (std::int64_t p : {1, 3, 10})
        for (double q : {0.1, 0.5, 0.9})
            for (double t : {0.1, 1.0, 5.0}) {
                const auto c = problem2_value(p, q, 1.0, t);
                const long double lq = q, x = std::pow(lq, (long double)t);
                const double ref = static_cast<double>(-std::log(lq) * oracle::qratio_brute(x, lq, p + 1));
                EXPECT_NEAR(c.value, ref, c.tail_bound + 1e-13 * (1 + std::fabs(ref)));
                EXPECT_EQ(c.verdict, Verdict::certified_positive) << p << " " << q << " " << t;
                expect_forms_agree(c);
            }
}

TEST(Problem2, KDependence) {
    const auto a = problem2_value(5, 0.5, 0.5, 1.0), b = problem2_value(5, 0.5, 2.0, 1.0);
    expect_forms_agree(a);
    expect_forms_agree(b);
    auto brute = [](double k) {
        long double s = 0.0L;
        for (int n = 1; n <= 5; ++n) s += std::pow(0.5L, (long double)n) / (1.0L - std::pow(0.5L, (long double)n));
        const long double r = oracle::qratio_brute(std::pow(0.5L, (long double)k), std::pow(0.5L, (long double)k));
        return static_cast<double>(std::log(0.5L) * (s - r));
    };
    EXPECT_NEAR(a.value, brute(0.5), a.tail_bound + 1e-13);
    EXPECT_NEAR(b.value, brute(2.0), b.tail_bound + 1e-13);
    EXPECT_NE(a.verdict, b.verdict);
}

TEST(Axes, ParseAndValues) {
    auto a = parse_axis("q", "0.05:0.95:19");
    EXPECT_EQ(a.values().size(), 19u);
    EXPECT_NEAR(a.values()[1], 0.1, 1e-15);
    auto l = parse_axis("t", "0.1:10:3:log");
    EXPECT_NEAR(l.values()[1], 1.0, 1e-14);
    auto s = parse_axis("k", "2");
    EXPECT_EQ(s.values(), std::vector<double>{2.0});
    EXPECT_THROW(parse_axis("q", "a:b:c"), DomainError);
    EXPECT_THROW(validate_axes(Problem::P1, {parse_axis("p", "1:3:3", true), parse_axis("q", "0.5:1.5:3"),
                                             parse_axis("t", "1")}),
                 DomainError);
}

TEST(Axes, ShrinkToMaxPoints) {
    auto axes = shrink_axes(default_axes(Problem::P1), 1);
    std::int64_t n = 1;
    for (const auto& a : axes) n *= a.steps;
    EXPECT_EQ(n, 1);
    axes = shrink_axes(default_axes(Problem::P2), 1000);
    n = 1;
    for (const auto& a : axes) n *= a.steps;
    EXPECT_LE(n, 1000);
}

TEST(Scan, DegenerateSinglePoint) {
    const std::vector<Axis> axes{parse_axis("p", "3", true), parse_axis("q", "0.5"), parse_axis("t", "1")};
    const auto m = scan(Problem::P1, axes);
    ASSERT_EQ(m.cells.size(), 1u);
    EXPECT_TRUE(m.boundaries.empty());
    EXPECT_EQ(m.cells[0].value, problem1_value(3, 0.5, 1.0).value);
}

TEST(Scan, DefaultP1DeterministicAndConsistent) {
    const auto axes = default_axes(Problem::P1);
    const auto a = scan(Problem::P1, axes, {}, 1), b = scan(Problem::P1, axes, {}, 8);
    std::size_t expected = 1;
    for (const auto& ax : axes) expected *= static_cast<std::size_t>(ax.steps);
    EXPECT_EQ(a.cells.size(), expected);
    EXPECT_EQ(to_csv(a), to_csv(b));
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    const std::string csv = to_csv(a);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "p,q,t,value,tail_bound,verdict");
}

TEST(Scan, BoundariesReprobe) {
    for (auto problem : {Problem::P1, Problem::P2}) {
        const auto m = scan(problem, default_axes(problem), {}, 8);
        EXPECT_FALSE(m.boundaries.empty());
        for (const auto& b : m.boundaries) {
            EXPECT_LE(b.lower, b.location);
            EXPECT_GE(b.upper, b.location);
            EXPECT_NE(b.lower_verdict, b.upper_verdict);
            const auto [lo, hi] = reprobe(m, b, 1e-6);
            EXPECT_TRUE(lo == b.lower_verdict || lo == Verdict::inconclusive);
            EXPECT_TRUE(hi == b.upper_verdict || hi == Verdict::inconclusive);
        }
    }
}

TEST(Scan, P2KAxisCrossingOne) {
    const std::vector<Axis> axes{parse_axis("p", "5", true), parse_axis("q", "0.5"), parse_axis("k", "0.25:4:16"),
                                 parse_axis("t", "1")};
    const auto m = scan(Problem::P2, axes);
    ASSERT_FALSE(m.boundaries.empty());
    const auto j = to_json(m);
    EXPECT_TRUE(j.contains("boundaries"));
    for (const auto& c : m.cells) EXPECT_NE(c.verdict, Verdict::inconclusive);
}

TEST(Scan, RejectsOversizedGrid) {
    const std::vector<Axis> axes{parse_axis("p", "1:10000:10000", true), parse_axis("q", "0.01:0.99:1000"),
                                 parse_axis("t", "0.1:10:10")};
    EXPECT_THROW(scan(Problem::P1, axes), DomainError);
}
