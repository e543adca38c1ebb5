// AVX2/FMA kernels. Four consecutive indices share a register; powers are
// advanced by multiplying with the 4-step ratio and re-anchored from libm
// every kAnchorSteps steps so the recurrence error stays at a few ulps.
// 1 - y^n is advanced through its own positive recurrence
//   1 - y^(n+4) = (1 - y^n) + y^n (1 - y^4)
// which avoids the cancellation of forming 1 - y^n from y^n.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <cmath>

#include "compensated.hpp"
#include "genzgamma/kernels.hpp"

namespace genzgamma::kernels::detail {

namespace {

constexpr int kLanes = 4;
constexpr std::int64_t kAnchorSteps = 16;

inline __m256d abs_pd(__m256d v) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

struct VecCompensatedSum {
    __m256d sum = _mm256_setzero_pd();
    __m256d carry = _mm256_setzero_pd();

    void add(__m256d v) {
        const __m256d t = _mm256_add_pd(sum, v);
        const __m256d sum_big = _mm256_cmp_pd(abs_pd(sum), abs_pd(v), _CMP_GE_OQ);
        const __m256d when_sum_big = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
        const __m256d when_v_big = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
        carry = _mm256_add_pd(carry, _mm256_blendv_pd(when_v_big, when_sum_big, sum_big));
        sum = t;
    }

    void drain_into(CompensatedSum& out) const {
        alignas(32) std::array<double, kLanes> s{};
        alignas(32) std::array<double, kLanes> c{};
        _mm256_store_pd(s.data(), sum);
        _mm256_store_pd(c.data(), carry);
        for (double v : s) out.add(v);
        for (double v : c) out.add(v);
    }
};

inline __m256d lane_indices(std::int64_t base) {
    const double b = static_cast<double>(base);
    return _mm256_setr_pd(b, b + 1.0, b + 2.0, b + 3.0);
}

template <class F>
inline __m256d anchor(std::int64_t base, F&& f) {
    alignas(32) std::array<double, kLanes> v{};
    for (int l = 0; l < kLanes; ++l) v[l] = f(static_cast<double>(base + l));
    return _mm256_load_pd(v.data());
}

// Power state of one q-ratio series over four lanes.
struct QRatioLanes {
    bool active = false;
    __m256d coeff{}, xn{}, yn{}, cn{};
    __m256d x4{}, y4{}, c4{};
    double log_x = 0.0, log_y = 0.0;

    explicit QRatioLanes(const QRatioTerm& s) : active(s.coeff != 0.0), log_x(s.log_x), log_y(s.log_y) {
        if (!active) return;
        coeff = _mm256_set1_pd(s.coeff);
        x4 = _mm256_set1_pd(std::exp(4.0 * log_x));
        y4 = _mm256_set1_pd(std::exp(4.0 * log_y));
        c4 = _mm256_set1_pd(-std::expm1(4.0 * log_y));
    }

    void reanchor(std::int64_t base) {
        xn = anchor(base, [&](double n) { return std::exp(n * log_x); });
        yn = anchor(base, [&](double n) { return std::exp(n * log_y); });
        cn = anchor(base, [&](double n) { return -std::expm1(n * log_y); });
    }

    [[nodiscard]] __m256d term() const { return _mm256_div_pd(_mm256_mul_pd(coeff, xn), cn); }

    void advance() {
        xn = _mm256_mul_pd(xn, x4);
        cn = _mm256_fmadd_pd(yn, c4, cn);
        yn = _mm256_mul_pd(yn, y4);
    }
};

inline double scalar_qratio_term(const QRatioTerm& s, double n) {
    return s.coeff * std::exp(n * s.log_x) / -std::expm1(n * s.log_y);
}

double qratio_sum_avx2(const QRatioTerm& a, const QRatioTerm& b, std::int64_t first,
                       std::int64_t last) {
    if (last < first) return 0.0;
    const std::int64_t count = last - first + 1;
    const std::int64_t vec_end = first + (count / kLanes) * kLanes;

    QRatioLanes la(a);
    QRatioLanes lb(b);
    VecCompensatedSum vacc;

    for (std::int64_t block = first; block < vec_end; block += kLanes * kAnchorSteps) {
        const std::int64_t steps = std::min(kAnchorSteps, (vec_end - block) / kLanes);
        if (la.active) la.reanchor(block);
        if (lb.active) lb.reanchor(block);
        for (std::int64_t s = 0; s < steps; ++s) {
            __m256d term = _mm256_setzero_pd();
            if (la.active) {
                term = la.term();
                la.advance();
            }
            if (lb.active) {
                term = _mm256_sub_pd(term, lb.term());
                lb.advance();
            }
            vacc.add(term);
        }
    }

    CompensatedSum acc;
    vacc.drain_into(acc);
    for (std::int64_t i = vec_end; i <= last; ++i) {
        const double n = static_cast<double>(i);
        double term = 0.0;
        if (la.active) term += scalar_qratio_term(a, n);
        if (lb.active) term -= scalar_qratio_term(b, n);
        acc.add(term);
    }
    return acc.result();
}

double qlog_sum_avx2(double log_x, double log_z, double log_y, double k, std::int64_t first,
                     std::int64_t last) {
    // Factor out the larger power so that neither factor overflows.
    if (log_x > log_z) return -qlog_sum_avx2(log_z, log_x, log_y, k, first, last);
    if (last < first) return 0.0;
    const std::int64_t count = last - first + 1;
    const std::int64_t vec_end = first + (count / kLanes) * kLanes;
    const double log_ratio = log_x - log_z;

    // d_n = x^n - z^n advanced as d_(n+4) = x^4 d_n + z^n (x^4 - z^4);
    // both addends carry the sign of (x - z).
    const __m256d x4 = _mm256_set1_pd(std::exp(4.0 * log_x));
    const __m256d z4 = _mm256_set1_pd(std::exp(4.0 * log_z));
    const __m256d d4 = _mm256_set1_pd(std::exp(4.0 * log_z) * std::expm1(4.0 * log_ratio));
    const __m256d y4 = _mm256_set1_pd(std::exp(4.0 * log_y));
    const __m256d c4 = _mm256_set1_pd(-std::expm1(4.0 * log_y));
    const __m256d kv = _mm256_set1_pd(k);
    const __m256d four = _mm256_set1_pd(4.0);

    VecCompensatedSum vacc;
    for (std::int64_t block = first; block < vec_end; block += kLanes * kAnchorSteps) {
        const std::int64_t steps = std::min(kAnchorSteps, (vec_end - block) / kLanes);
        __m256d dn = anchor(block, [&](double n) { return std::exp(n * log_z) * std::expm1(n * log_ratio); });
        __m256d zn = anchor(block, [&](double n) { return std::exp(n * log_z); });
        __m256d yn = anchor(block, [&](double n) { return std::exp(n * log_y); });
        __m256d cn = anchor(block, [&](double n) { return -std::expm1(n * log_y); });
        __m256d nv = lane_indices(block);
        for (std::int64_t s = 0; s < steps; ++s) {
            const __m256d denom = _mm256_mul_pd(_mm256_mul_pd(nv, kv), cn);
            vacc.add(_mm256_div_pd(dn, denom));
            dn = _mm256_fmadd_pd(x4, dn, _mm256_mul_pd(zn, d4));
            zn = _mm256_mul_pd(zn, z4);
            cn = _mm256_fmadd_pd(yn, c4, cn);
            yn = _mm256_mul_pd(yn, y4);
            nv = _mm256_add_pd(nv, four);
        }
    }

    CompensatedSum acc;
    vacc.drain_into(acc);
    for (std::int64_t i = vec_end; i <= last; ++i) {
        const double n = static_cast<double>(i);
        const double diff = std::exp(n * log_z) * std::expm1(n * log_ratio);
        acc.add(diff / (n * k * -std::expm1(n * log_y)));
    }
    return acc.result();
}

double reciprocal_sum_avx2(double shift, std::int64_t first, std::int64_t last) {
    if (last < first) return 0.0;
    const std::int64_t count = last - first + 1;
    const std::int64_t vec_end = first + (count / kLanes) * kLanes;
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d four = _mm256_set1_pd(4.0);
    const __m256d sv = _mm256_set1_pd(shift);

    VecCompensatedSum vacc;
    __m256d nv = lane_indices(first);
    for (std::int64_t i = first; i < vec_end; i += kLanes) {
        vacc.add(_mm256_div_pd(one, _mm256_add_pd(nv, sv)));
        nv = _mm256_add_pd(nv, four);
    }
    CompensatedSum acc;
    vacc.drain_into(acc);
    for (std::int64_t i = vec_end; i <= last; ++i) acc.add(1.0 / (static_cast<double>(i) + shift));
    return acc.result();
}

double digamma_sum_avx2(double t, double k, std::int64_t first, std::int64_t last) {
    if (last < first) return 0.0;
    const std::int64_t count = last - first + 1;
    const std::int64_t vec_end = first + (count / kLanes) * kLanes;
    const __m256d tv = _mm256_set1_pd(t);
    const __m256d kv = _mm256_set1_pd(k);
    const __m256d four = _mm256_set1_pd(4.0);

    VecCompensatedSum vacc;
    __m256d nv = lane_indices(first);
    for (std::int64_t i = first; i < vec_end; i += kLanes) {
        const __m256d nk = _mm256_mul_pd(nv, kv);
        vacc.add(_mm256_div_pd(tv, _mm256_mul_pd(nk, _mm256_add_pd(nk, tv))));
        nv = _mm256_add_pd(nv, four);
    }
    CompensatedSum acc;
    vacc.drain_into(acc);
    for (std::int64_t i = vec_end; i <= last; ++i) {
        const double nk = static_cast<double>(i) * k;
        acc.add(t / (nk * (nk + t)));
    }
    return acc.result();
}

constexpr KernelTable kAvx2Table{
    qratio_sum_avx2,
    qlog_sum_avx2,
    reciprocal_sum_avx2,
    digamma_sum_avx2,
};

}  // namespace

const KernelTable& avx2_table() noexcept { return kAvx2Table; }

}  // namespace genzgamma::kernels::detail
