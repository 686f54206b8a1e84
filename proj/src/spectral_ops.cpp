#include "nls/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace nls {

namespace {

// One forward/backward plan pair per grid size. FFTW plan creation is not
// thread-safe, so creation happens under the mutex; fftw_execute_dft on
// caller-owned arrays is documented re-entrant and runs lock-free.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    PlanPair& pp = cache[n];
    if (!pp.fwd) {
        // Planning buffers fix the alignment class the plans expect; cvector
        // allocations are 64-byte aligned, matching exec-time buffers.
        cvector a(n), b(n);
        auto* pa = reinterpret_cast<fftw_complex*>(a.data());
        auto* pb = reinterpret_cast<fftw_complex*>(b.data());
        pp.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE);
        pp.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!pp.fwd || !pp.bwd) throw SolverError("fft: planning failed for n = " + std::to_string(n));
    }
    return pp;
}

bool aligned_ok(const void* p) { return (reinterpret_cast<std::uintptr_t>(p) & 63u) == 0; }

void run_plan(fftw_plan plan, const cplx* src, cplx* dst, int n) {
    // The cached plans assume 64-byte alignment and out-of-place execution;
    // anything else detours through aligned scratch copies.
    thread_local cvector scratch_in, scratch_out;
    const cplx* s = src;
    cplx* d = dst;
    if (!aligned_ok(src) || src == dst) {
        scratch_in.assign(src, src + n);
        s = scratch_in.data();
    }
    const bool dst_detour = !aligned_ok(dst) || src == dst;
    if (dst_detour) {
        scratch_out.resize(n);
        d = scratch_out.data();
    }
    fftw_execute_dft(plan,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(s)),
                     reinterpret_cast<fftw_complex*>(d));
    if (dst_detour) std::copy(d, d + n, dst);
}

void check_finite(const cvector& z, const char* what) {
    for (const cplx& v : z)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw ValidationError(std::string("field: non-finite ") + what);
}

// sign_k = (-1)^{mode(k)} = (-1)^k for even n: re-anchors transform-order
// coefficients to x = -length/2 instead of x = 0.
inline double anchor_sign(int k) { return (k & 1) ? -1.0 : 1.0; }

template <typename Mult>
Field multiplier_image(const Field& f, Mult&& m) {
    const Grid& g = f.grid();
    const int n = g.n();
    cvector spec(n);
    const cvector& in = f.spectrum();
    for (int k = 0; k < n; ++k) spec[k] = m(g.xi(k)) * in[k];
    return Field::from_spectrum(f.grid_ptr(), std::move(spec));
}

}  // namespace

namespace spectral {

void forward(const Grid& grid, const cplx* phys, cplx* coeffs) {
    const int n = grid.n();
    run_plan(plans_for(n).fwd, phys, coeffs, n);
    const double inv_n = 1.0 / n;
    for (int k = 0; k < n; ++k) coeffs[k] *= anchor_sign(k) * inv_n;
}

void inverse(const Grid& grid, const cplx* coeffs, cplx* phys) {
    const int n = grid.n();
    thread_local cvector tmp;
    tmp.resize(n);
    for (int k = 0; k < n; ++k) tmp[k] = anchor_sign(k) * coeffs[k];
    run_plan(plans_for(n).bwd, tmp.data(), phys, n);
}

void apply_free_propagator(const Grid& grid, cplx* coeffs, double t) {
    const int n = grid.n();
    for (int k = 0; k < n; ++k) {
        const double xi = grid.xi(k);
        coeffs[k] *= std::polar(1.0, -t * xi * xi);
    }
}

void apply_bessel(const Grid& grid, cplx* coeffs, double s) {
    if (s == 0.0) return;
    const int n = grid.n();
    for (int k = 0; k < n; ++k) {
        const double xi = grid.xi(k);
        coeffs[k] *= std::pow(1.0 + xi * xi, 0.5 * s);
    }
}

Field free_propagate(const Field& f, double t) {
    if (!std::isfinite(t)) throw ValidationError("free_propagate: non-finite time");
    return multiplier_image(f, [t](double xi) { return std::polar(1.0, -t * xi * xi); });
}

Field twist(const Field& f, double t) { return free_propagate(f, -t); }

Field bessel_potential(const Field& f, double s) {
    if (!std::isfinite(s)) throw ValidationError("bessel_potential: non-finite order");
    return multiplier_image(f, [s](double xi) { return std::pow(1.0 + xi * xi, 0.5 * s); });
}

Field riesz_potential(const Field& f, double s) {
    if (!std::isfinite(s)) throw ValidationError("riesz_potential: non-finite order");
    if (s < 0.0) {
        // |xi|^s blows up at the zero mode: a mean component has no preimage.
        // "Zero mean" is judged against the field's own spectral scale.
        double scale = 0.0;
        for (const cplx& c : f.spectrum()) scale = std::max(scale, std::abs(c));
        if (std::abs(f.spectrum()[0]) > 1e-12 * std::max(1.0, scale))
            throw ValidationError("riesz_potential: s < 0 requires a zero-mean field");
    }
    return multiplier_image(f, [s](double xi) {
        return xi == 0.0 ? 0.0 : std::pow(std::abs(xi), s);
    });
}

}  // namespace spectral

Field Field::from_values(GridPtr grid, cvector values) {
    if (!grid) throw ValidationError("field: null grid");
    if (static_cast<int>(values.size()) != grid->n())
        throw ValidationError("field: value count " + std::to_string(values.size()) +
                              " does not match grid n = " + std::to_string(grid->n()));
    check_finite(values, "sample");
    cvector spec(grid->n());
    spectral::forward(*grid, values.data(), spec.data());
    return Field(std::move(grid), std::move(values), std::move(spec));
}

Field Field::from_spectrum(GridPtr grid, cvector spectrum) {
    if (!grid) throw ValidationError("field: null grid");
    if (static_cast<int>(spectrum.size()) != grid->n())
        throw ValidationError("field: coefficient count " + std::to_string(spectrum.size()) +
                              " does not match grid n = " + std::to_string(grid->n()));
    check_finite(spectrum, "coefficient");
    cvector vals(grid->n());
    spectral::inverse(*grid, spectrum.data(), vals.data());
    return Field(std::move(grid), std::move(vals), std::move(spectrum));
}

double Field::l2_norm() const {
    return std::sqrt(grid_->dx() * kernels::sum_abs2(values_.data(), values_.size()));
}

}  // namespace nls
