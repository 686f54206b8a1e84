#include "nls/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace nls::kernels {

// ----------------------------------------------------------------- reference

namespace ref {

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_add(cplx* acc, const cplx* a, const cplx* b, cplx w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) acc[i] += w * (a[i] * b[i]);
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void cubic(cplx* dst, const cplx* u, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        const double m2 = re * re + im * im;
        dst[i] = cplx(m2 * re, m2 * im);
    }
}

double sum_abs2(const cplx* u, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        s += re * re + im * im;
    }
    return s;
}

double sum_abs2_diff(const cplx* u, const cplx* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real() - v[i].real();
        const double im = u[i].imag() - v[i].imag();
        s += re * re + im * im;
    }
    return s;
}

double sum_abs_pow(const cplx* u, double p, std::size_t n) {
    const double h = 0.5 * p;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        const double m2 = re * re + im * im;
        if (m2 > 0.0) s += std::pow(m2, h);
    }
    return s;
}

double max_abs(const cplx* u, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double re = u[i].real(), im = u[i].imag();
        m = std::max(m, re * re + im * im);
    }
    return std::sqrt(m);
}

}  // namespace ref

// ------------------------------------------------------------------ dispatch

struct Table {
    void (*cmul)(cplx*, const cplx*, const cplx*, std::size_t);
    void (*cmul_add)(cplx*, const cplx*, const cplx*, cplx, std::size_t);
    void (*axpy)(cplx*, cplx, const cplx*, std::size_t);
    void (*cubic)(cplx*, const cplx*, std::size_t);
    double (*sum_abs2)(const cplx*, std::size_t);
    double (*sum_abs2_diff)(const cplx*, const cplx*, std::size_t);
    double (*sum_abs_pow)(const cplx*, double, std::size_t);
    double (*max_abs)(const cplx*, std::size_t);
};

static constexpr Table kScalarTable = {
    ref::cmul, ref::cmul_add, ref::axpy,        ref::cubic,
    ref::sum_abs2, ref::sum_abs2_diff, ref::sum_abs_pow, ref::max_abs,
};

#if defined(NLS_HAVE_AVX2)
namespace avx2 {
void cmul(cplx*, const cplx*, const cplx*, std::size_t);
void cmul_add(cplx*, const cplx*, const cplx*, cplx, std::size_t);
void axpy(cplx*, cplx, const cplx*, std::size_t);
void cubic(cplx*, const cplx*, std::size_t);
double sum_abs2(const cplx*, std::size_t);
double sum_abs2_diff(const cplx*, const cplx*, std::size_t);
double sum_abs_pow(const cplx*, double, std::size_t);
double max_abs(const cplx*, std::size_t);
}  // namespace avx2

static constexpr Table kAvx2Table = {
    avx2::cmul, avx2::cmul_add, avx2::axpy,        avx2::cubic,
    avx2::sum_abs2, avx2::sum_abs2_diff, avx2::sum_abs_pow, avx2::max_abs,
};
#endif

static bool avx2_usable() {
#if defined(NLS_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

namespace {

std::atomic<const Table*> g_table{nullptr};
std::atomic<Isa> g_isa{Isa::scalar};
std::once_flag g_init;

void init_from_env() {
    Isa pick = avx2_usable() ? Isa::avx2 : Isa::scalar;
    if (const char* env = std::getenv("NLS_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") pick = Isa::scalar;
        else if (want == "avx2" && avx2_usable()) pick = Isa::avx2;
        // unknown/unusable values fall through to the autodetected pick
    }
    g_isa.store(pick);
#if defined(NLS_HAVE_AVX2)
    g_table.store(pick == Isa::avx2 ? &kAvx2Table : &kScalarTable);
#else
    g_table.store(&kScalarTable);
#endif
}

inline const Table& table() {
    std::call_once(g_init, init_from_env);
    return *g_table.load(std::memory_order_relaxed);
}

}  // namespace

Isa active() {
    std::call_once(g_init, init_from_env);
    return g_isa.load();
}

std::vector<Isa> available() {
    std::vector<Isa> out{Isa::scalar};
    if (avx2_usable()) out.push_back(Isa::avx2);
    return out;
}

void force(Isa isa) {
    std::call_once(g_init, init_from_env);
    switch (isa) {
        case Isa::scalar:
            g_table.store(&kScalarTable);
            break;
        case Isa::avx2:
#if defined(NLS_HAVE_AVX2)
            if (avx2_usable()) {
                g_table.store(&kAvx2Table);
                break;
            }
#endif
            throw std::runtime_error("kernels: avx2 not available on this host");
    }
    g_isa.store(isa);
}

std::string name(Isa isa) {
    return isa == Isa::avx2 ? "avx2" : "scalar";
}

// ------------------------------------------------------- dispatched entries

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    table().cmul(dst, a, b, n);
}
void cmul_add(cplx* acc, const cplx* a, const cplx* b, cplx w, std::size_t n) {
    table().cmul_add(acc, a, b, w, n);
}
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
    table().axpy(y, alpha, x, n);
}
void cubic(cplx* dst, const cplx* u, std::size_t n) {
    table().cubic(dst, u, n);
}
double sum_abs2(const cplx* u, std::size_t n) {
    return table().sum_abs2(u, n);
}
double sum_abs2_diff(const cplx* u, const cplx* v, std::size_t n) {
    return table().sum_abs2_diff(u, v, n);
}
double sum_abs_pow(const cplx* u, double p, std::size_t n) {
    if (p == 2.0) return table().sum_abs2(u, n);
    return table().sum_abs_pow(u, p, n);
}
double max_abs(const cplx* u, std::size_t n) {
    return table().max_abs(u, n);
}

}  // namespace nls::kernels
