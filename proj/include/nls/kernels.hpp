#pragma once
// Elementwise complex kernels underneath the spectral machinery.
//
// Every kernel has a scalar reference implementation and (on x86-64) an AVX2
// variant; the active variant is chosen at runtime from CPU features, or
// forced via force()/the NLS_KERNELS environment variable. The SIMD variants
// are bound to the scalar ones by equivalence tests, not trusted on faith.

#include <complex>
#include <cstddef>
#include <cstdlib>
#include <new>
#include <string>
#include <vector>

namespace nls {

/// 64-byte aligned allocator so buffers satisfy both FFTW and AVX2 loads.
template <class T>
struct AlignedAlloc {
    using value_type = T;
    static constexpr std::size_t alignment = 64;

    AlignedAlloc() noexcept = default;
    template <class U>
    AlignedAlloc(const AlignedAlloc<U>&) noexcept {}

    T* allocate(std::size_t n) {
        if (n == 0) return nullptr;
        void* p = ::operator new[](n * sizeof(T), std::align_val_t(alignment));
        return static_cast<T*>(p);
    }
    void deallocate(T* p, std::size_t) noexcept {
        ::operator delete[](p, std::align_val_t(alignment));
    }
    bool operator==(const AlignedAlloc&) const noexcept { return true; }
};

using cplx = std::complex<double>;
using cvector = std::vector<cplx, AlignedAlloc<cplx>>;
using dvector = std::vector<double, AlignedAlloc<double>>;

namespace kernels {

enum class Isa { scalar = 0, avx2 = 1 };

/// Variant currently answering the free functions below.
Isa active();
/// All variants usable on this machine (scalar always present).
std::vector<Isa> available();
/// Pin a variant (tests, NLS_KERNELS=scalar|avx2). Throws if unavailable.
void force(Isa isa);
std::string name(Isa isa);

/// dst[i] = a[i] * b[i]
void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
/// acc[i] += w * a[i] * b[i]   (phase-table application fused with weighting)
void cmul_add(cplx* acc, const cplx* a, const cplx* b, cplx w, std::size_t n);
/// y[i] += alpha * x[i]
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
/// dst[i] = |u[i]|^2 * u[i]
void cubic(cplx* dst, const cplx* u, std::size_t n);
/// sum_i |u[i]|^2
double sum_abs2(const cplx* u, std::size_t n);
/// sum_i |u[i] - v[i]|^2
double sum_abs2_diff(const cplx* u, const cplx* v, std::size_t n);
/// sum_i |u[i]|^p, p > 0 (p = 2 routes to sum_abs2)
double sum_abs_pow(const cplx* u, double p, std::size_t n);
/// max_i |u[i]|
double max_abs(const cplx* u, std::size_t n);

// Scalar reference implementations, exposed for equivalence testing.
namespace ref {
void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
void cmul_add(cplx* acc, const cplx* a, const cplx* b, cplx w, std::size_t n);
void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n);
void cubic(cplx* dst, const cplx* u, std::size_t n);
double sum_abs2(const cplx* u, std::size_t n);
double sum_abs2_diff(const cplx* u, const cplx* v, std::size_t n);
double sum_abs_pow(const cplx* u, double p, std::size_t n);
double max_abs(const cplx* u, std::size_t n);
}  // namespace ref

}  // namespace kernels
}  // namespace nls
