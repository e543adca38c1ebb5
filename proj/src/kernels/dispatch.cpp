#include <atomic>
#include <cstdlib>
#include <string>

#include "genzgamma/error.hpp"
#include "genzgamma/kernels.hpp"

namespace genzgamma::kernels {

namespace {

bool probe_avx2() noexcept {
#if defined(GENZGAMMA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

bool cpu_has_avx2() noexcept {
    static const bool has = probe_avx2();
    return has;
}

Isa pick_default() noexcept {
    if (const char* env = std::getenv("GENZGAMMA_ISA")) {
        const std::string want(env);
        if (want == "scalar") return Isa::scalar;
        if (want == "avx2" && cpu_has_avx2()) return Isa::avx2;
    }
    return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{pick_default()};
    return isa;
}

const KernelTable& active_table() {
#if defined(GENZGAMMA_HAVE_AVX2)
    if (active().load(std::memory_order_relaxed) == Isa::avx2) return detail::avx2_table();
#endif
    return detail::scalar_table();
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2: return cpu_has_avx2();
    }
    return false;
}

const KernelTable& table(Isa isa) {
    if (!isa_available(isa))
        throw DomainError("kernel variant '" + std::string(isa_name(isa)) + "' is not available");
#if defined(GENZGAMMA_HAVE_AVX2)
    if (isa == Isa::avx2) return detail::avx2_table();
#endif
    return detail::scalar_table();
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    (void)table(isa);
    active().store(isa, std::memory_order_relaxed);
}

double qratio_sum(const QRatioTerm& a, const QRatioTerm& b, std::int64_t first, std::int64_t last) {
    return active_table().qratio_sum(a, b, first, last);
}

double qlog_sum(double log_x, double log_z, double log_y, double k, std::int64_t first,
                std::int64_t last) {
    return active_table().qlog_sum(log_x, log_z, log_y, k, first, last);
}

double reciprocal_sum(double shift, std::int64_t first, std::int64_t last) {
    return active_table().reciprocal_sum(shift, first, last);
}

double digamma_sum(double t, double k, std::int64_t first, std::int64_t last) {
    return active_table().digamma_sum(t, k, first, last);
}

}  // namespace genzgamma::kernels
