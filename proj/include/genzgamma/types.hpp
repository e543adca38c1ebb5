#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "genzgamma/error.hpp"

namespace genzgamma {

/// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon();

/// Strictly positive function argument.
class EvalPoint {
public:
    explicit EvalPoint(double t);

    [[nodiscard]] double value() const noexcept { return t_; }

private:
    double t_;
};

/// Truncation policy for infinite series: stop at the first index whose
/// a-priori tail bound is below `tail_tol`, fail past `max_terms`.
class SeriesBudget {
public:
    static constexpr double kDefaultTailTol = 1e-12;
    static constexpr std::int64_t kDefaultMaxTerms = 1'000'000;

    SeriesBudget() = default;
    SeriesBudget(double tail_tol, std::int64_t max_terms);

    [[nodiscard]] double tail_tol() const noexcept { return tail_tol_; }
    [[nodiscard]] std::int64_t max_terms() const noexcept { return max_terms_; }

private:
    double tail_tol_ = kDefaultTailTol;
    std::int64_t max_terms_ = kDefaultMaxTerms;
};

/// Generalization parameters. Members left unset are "unused" for the
/// family at hand; reading one throws.
class ParamSet {
public:
    ParamSet() = default;

    ParamSet& with_p(std::int64_t p);
    ParamSet& with_q(double q);
    ParamSet& with_k(double k);

    [[nodiscard]] std::int64_t p() const;
    [[nodiscard]] double q() const;
    [[nodiscard]] double k() const;

    [[nodiscard]] bool has_p() const noexcept { return p_.has_value(); }
    [[nodiscard]] bool has_q() const noexcept { return q_.has_value(); }
    [[nodiscard]] bool has_k() const noexcept { return k_.has_value(); }

private:
    std::optional<std::int64_t> p_;
    std::optional<double> q_;
    std::optional<double> k_;
};

/// Natural log of a Gamma-family value together with the guaranteed
/// absolute truncation/approximation error of that log.
struct LogGammaValue {
    double log_value = 0.0;
    double tail_bound = 0.0;
};

struct PsiValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Domain checks shared by all modules. Each throws DomainError.
void require_p(std::int64_t p);
void require_q(double q);
void require_k(double k);
void require_positive(double v, const char* what);

}  // namespace genzgamma
