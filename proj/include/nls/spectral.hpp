#pragma once
// Fields on a periodic grid carried in both representations at once, plus
// the Fourier-multiplier operators everything downstream composes: the free
// propagator e^{-it d^2/dx^2}, its inverse twist, and the Bessel / Riesz
// potentials.
//
// Spectrum convention: coefficients c_k are anchored to physical space,
//   u(x_j) = sum_k c_k exp(i xi_k x_j),  xi_k = 2 pi k / length,
// stored in transform order (k = 0..n/2-1, -n/2..-1). Parseval then reads
//   dx * sum |u_j|^2 = length * sum |c_k|^2.

#include "nls/grid.hpp"

namespace nls {

class Field {
  public:
    // Both constructors validate finiteness and eagerly build the dual
    // representation, so Fields are immutable and race-free afterwards.
    static Field from_values(GridPtr grid, cvector values);
    static Field from_spectrum(GridPtr grid, cvector spectrum);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const cvector& values() const { return values_; }
    const cvector& spectrum() const { return spectrum_; }

    double l2_norm() const;  // sqrt(dx * sum |values|^2), the discrete L^2 norm

  private:
    Field(GridPtr g, cvector vals, cvector spec)
        : grid_(std::move(g)), values_(std::move(vals)), spectrum_(std::move(spec)) {}
    GridPtr grid_;
    cvector values_;
    cvector spectrum_;
};

namespace spectral {

// Raw transforms between physical samples and anchored coefficients, both in
// storage order. src and dst must be distinct arrays of grid.n() entries.
// Thread-safe; plans are cached per size under a lock and executed lock-free.
void forward(const Grid& grid, const cplx* phys, cplx* coeffs);
void inverse(const Grid& grid, const cplx* coeffs, cplx* phys);

// e^{+it d^2/dx^2} as the multiplier e^{-it xi^2} (the sign that makes
// u(t) = free_propagate(phi, t) solve i u_t + u_xx = 0).
Field free_propagate(const Field& f, double t);

// e^{-it d^2/dx^2}: exact inverse of free_propagate at the same t.
Field twist(const Field& f, double t);

// (1 - d^2/dx^2)^{s/2}: multiplier (1 + xi^2)^{s/2}.
Field bessel_potential(const Field& f, double s);

// |d/dx|^s: multiplier |xi|^s with the zero mode sent to 0 for s >= 0.
// For s < 0 a nonzero mean has no preimage: ValidationError.
Field riesz_potential(const Field& f, double s);

// In-place multiplier application on storage-order coefficients (solver and
// norm hot paths; the Field wrappers above are built on these).
void apply_free_propagator(const Grid& grid, cplx* coeffs, double t);
void apply_bessel(const Grid& grid, cplx* coeffs, double s);

}  // namespace spectral

}  // namespace nls
