#pragma once

// Inner summation loops shared by the psi and Gamma series.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The variant is picked once at first use from the CPU
// features; GENZGAMMA_ISA=scalar|avx2 overrides the choice. Both variants
// use compensated (Neumaier) accumulation and agree to a few ulps of the
// sum of absolute terms.

#include <cstdint>
#include <string_view>

namespace genzgamma::kernels {

/// One q-ratio series coefficient * x^n / (1 - y^n), given through the
/// logs of its ratios: x = exp(log_x), y = exp(log_y), both logs < 0.
/// A zero coefficient switches the series off.
struct QRatioTerm {
    double coeff = 0.0;
    double log_x = -1.0;
    double log_y = -1.0;
};

using QRatioSumFn = double (*)(const QRatioTerm& a, const QRatioTerm& b, std::int64_t first,
                               std::int64_t last);
using QLogSumFn = double (*)(double log_x, double log_z, double log_y, double k,
                             std::int64_t first, std::int64_t last);
using ReciprocalSumFn = double (*)(double shift, std::int64_t first, std::int64_t last);
using DigammaSumFn = double (*)(double t, double k, std::int64_t first, std::int64_t last);

/// Function table for one instruction set.
struct KernelTable {
    /// sum_{n=first}^{last} [a(n) - b(n)]
    QRatioSumFn qratio_sum;
    /// sum_{n=first}^{last} (x^n - z^n) / (n k (1 - y^n))
    QLogSumFn qlog_sum;
    /// sum_{n=first}^{last} 1 / (n + shift)
    ReciprocalSumFn reciprocal_sum;
    /// sum_{n=first}^{last} t / (n k (n k + t))
    DigammaSumFn digamma_sum;
};

enum class Isa { scalar, avx2 };

[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
[[nodiscard]] bool isa_available(Isa isa) noexcept;

/// Table for a specific variant. Throws DomainError if unavailable.
[[nodiscard]] const KernelTable& table(Isa isa);

[[nodiscard]] Isa active_isa() noexcept;

/// Switches the dispatched variant process-wide.
void set_active_isa(Isa isa);

// Dispatched entry points. Empty ranges (first > last) sum to 0.
double qratio_sum(const QRatioTerm& a, const QRatioTerm& b, std::int64_t first, std::int64_t last);
double qlog_sum(double log_x, double log_z, double log_y, double k, std::int64_t first,
                std::int64_t last);
double reciprocal_sum(double shift, std::int64_t first, std::int64_t last);
double digamma_sum(double t, double k, std::int64_t first, std::int64_t last);

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(GENZGAMMA_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
}  // namespace detail

}  // namespace genzgamma::kernels
