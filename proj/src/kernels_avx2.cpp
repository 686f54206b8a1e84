// AVX2 kernel variants. This TU is the only one compiled with -mavx2 -mfma;
// nothing here may be called unless __builtin_cpu_supports("avx2") held.
#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "nls/kernels.hpp"

namespace nls::kernels::avx2 {

namespace {

// [a0 a1] * [b0 b1] for interleaved complex doubles, via fmaddsub:
// even lanes re*re' - im*im', odd lanes im*re' + re*im'.
inline __m256d cmul2(__m256d a, __m256d b) {
    __m256d bre = _mm256_movedup_pd(b);
    __m256d bim = _mm256_permute_pd(b, 0xF);
    __m256d aswap = _mm256_permute_pd(a, 0x5);
    return _mm256_fmaddsub_pd(a, bre, _mm256_mul_pd(aswap, bim));
}

// |z|^2 per complex, duplicated into both lanes of its pair.
inline __m256d abs2dup(__m256d a) {
    __m256d sq = _mm256_mul_pd(a, a);
    return _mm256_hadd_pd(sq, sq);
}

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return std::max(_mm_cvtsd_f64(lo), _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo)));
}

}  // namespace

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(d + 2 * i, cmul2(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_add(cplx* acc, const cplx* a, const cplx* b, cplx w, std::size_t n) {
    const __m256d wre = _mm256_set1_pd(w.real());
    const __m256d wim = _mm256_set1_pd(w.imag());
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(acc);
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d t = cmul2(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
        __m256d tswap = _mm256_permute_pd(t, 0x5);
        __m256d wt = _mm256_fmaddsub_pd(t, wre, _mm256_mul_pd(tswap, wim));
        _mm256_storeu_pd(d + 2 * i, _mm256_add_pd(_mm256_loadu_pd(d + 2 * i), wt));
    }
    for (; i < n; ++i) acc[i] += w * (a[i] * b[i]);
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    const __m256d are = _mm256_set1_pd(alpha.real());
    const __m256d aim = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(y);
    const auto* px = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m256d t = _mm256_loadu_pd(px + 2 * i);
        __m256d tswap = _mm256_permute_pd(t, 0x5);
        __m256d at = _mm256_fmaddsub_pd(t, are, _mm256_mul_pd(tswap, aim));
        _mm256_storeu_pd(d + 2 * i, _mm256_add_pd(_mm256_loadu_pd(d + 2 * i), at));
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void cubic(cplx* dst, const cplx* u, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    const auto* pu = reinterpret_cast<const double*>(u);
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pu + 2 * i);
        _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(abs2dup(v), v));
    }
    for (; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        const double m2 = re * re + im * im;
        dst[i] = cplx(m2 * re, m2 * im);
    }
}

double sum_abs2(const cplx* u, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const auto* pu = reinterpret_cast<const double*>(u);
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pu + 2 * i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        s += re * re + im * im;
    }
    return s;
}

double sum_abs2_diff(const cplx* u, const cplx* v, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const auto* pu = reinterpret_cast<const double*>(u);
    const auto* pv = reinterpret_cast<const double*>(v);
    for (; i + 2 <= n; i += 2) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pu + 2 * i), _mm256_loadu_pd(pv + 2 * i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double re = u[i].real() - v[i].real();
        const double im = u[i].imag() - v[i].imag();
        s += re * re + im * im;
    }
    return s;
}

double sum_abs_pow(const cplx* u, double p, std::size_t n) {
    // SIMD for the |z|^2 part; pow stays scalar (no vector libm here).
    const double h = 0.5 * p;
    alignas(32) double m2[4];
    double s = 0.0;
    std::size_t i = 0;
    const auto* pu = reinterpret_cast<const double*>(u);
    for (; i + 4 <= n; i += 4) {
        __m256d v0 = _mm256_loadu_pd(pu + 2 * i);
        __m256d v1 = _mm256_loadu_pd(pu + 2 * i + 4);
        __m256d sq0 = _mm256_mul_pd(v0, v0);
        __m256d sq1 = _mm256_mul_pd(v1, v1);
        _mm256_store_pd(m2, _mm256_hadd_pd(sq0, sq1));  // [z0 z2 z1 z3]
        for (double m : m2)
            if (m > 0.0) s += std::pow(m, h);
    }
    for (; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        const double m = re * re + im * im;
        if (m > 0.0) s += std::pow(m, h);
    }
    return s;
}

double max_abs(const cplx* u, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const auto* pu = reinterpret_cast<const double*>(u);
    for (; i + 2 <= n; i += 2) {
        __m256d v = _mm256_loadu_pd(pu + 2 * i);
        acc = _mm256_max_pd(acc, abs2dup(v));
    }
    double m = hmax(acc);
    for (; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        m = std::max(m, re * re + im * im);
    }
    return std::sqrt(m);
}

}  // namespace nls::kernels::avx2
