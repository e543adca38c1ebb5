#pragma once

// Sign scans for the two open-problem expressions
//
//   P1(p, q, t)    = log p + log(1-q) + psi_q(t) - psi_p(t)
//                  = sum_{n=0}^{p} 1/(n+t) + log q sum_{n>=1} q^(nt)/(1-q^n)
//   P2(p, q, k, t) = -log[p]_q - log(1-q)/k + psi_(p,q)(t) - psi_(q,k)(t)
//                  = log q [sum_{n=1}^{p} q^(nt)/(1-q^n) - sum_{n>=1} q^(nkt)/(1-q^(nk))]
//
// with psi_(p,q) in its finite series form. Both sides are computed and
// must agree within tail bounds and round-off.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genzgamma/lemmas.hpp"
#include "genzgamma/types.hpp"

namespace genzgamma {

enum class Problem { P1 = 1, P2 = 2 };

[[nodiscard]] std::string_view to_string(Problem p) noexcept;
[[nodiscard]] Problem parse_problem(std::string_view name);

/// `value` is the series form, `direct_value` the psi-difference form. The
/// verdict uses the tail bound widened by the round-off allowance.
SignCertificate problem1_value(std::int64_t p, double q, double t, const SeriesBudget& budget = {});
SignCertificate problem2_value(std::int64_t p, double q, double k, double t, const SeriesBudget& budget = {});

enum class Spacing { linear, log };

/// Scan axis: `steps` points from lo to hi (inclusive). Integer axes round
/// to the nearest integer and must not produce duplicates.
struct Axis {
    std::string name;
    double lo = 0.0;
    double hi = 0.0;
    std::int64_t steps = 1;
    Spacing spacing = Spacing::linear;
    bool integer = false;

    [[nodiscard]] std::vector<double> values() const;
};

/// Parses "lo:hi:steps", "lo:hi:steps:log" or a single value.
Axis parse_axis(std::string_view name, std::string_view text, bool integer = false);

/// Axes in scan order: p, q, t for P1 and p, q, k, t for P2.
[[nodiscard]] std::vector<Axis> default_axes(Problem problem);

/// Checks names and order against the problem and domains of the values.
void validate_axes(Problem problem, const std::vector<Axis>& axes);

inline constexpr std::int64_t kMaxScanPoints = 10'000'000;

/// Largest-axis-first step reduction until the grid has at most max_points cells.
std::vector<Axis> shrink_axes(std::vector<Axis> axes, std::int64_t max_points);

struct Cell {
    std::vector<double> coords;
    double value = 0.0;
    double tail_bound = 0.0;
    Verdict verdict = Verdict::inconclusive;
};

/// A sign change between two neighbouring cells along `axis`, refined by
/// bisection. `lower`/`upper` bracket the change in that coordinate; the
/// other coordinates are those of the neighbours. Continuous axes stop at a
/// bracket of width 1e-7 or at an inconclusive midpoint; integer axes stop at
/// adjacent integers.
struct Boundary {
    std::size_t axis = 0;
    std::vector<double> coords;  // with coords[axis] = location
    double lower = 0.0;
    double upper = 0.0;
    double location = 0.0;
    Verdict lower_verdict = Verdict::inconclusive;
    Verdict upper_verdict = Verdict::inconclusive;
};

struct RegionMap {
    Problem problem = Problem::P1;
    std::vector<Axis> axes;
    std::vector<Cell> cells;  // row-major in axis order
    std::vector<Boundary> boundaries;
};

inline constexpr double kBisectionWidth = 1e-7;

/// Evaluates the problem at explicit coordinates in axis order.
SignCertificate evaluate_problem(Problem problem, const std::vector<double>& coords, const SeriesBudget& budget);

RegionMap scan(Problem problem, const std::vector<Axis>& axes, const SeriesBudget& budget = {},
               unsigned workers = 1);

[[nodiscard]] std::string to_csv(const RegionMap& map);
[[nodiscard]] nlohmann::json to_json(const RegionMap& map);

}  // namespace genzgamma
