#pragma once
// Seeded random test ensembles: band-limited fields with per-mode draws that
// depend only on (seed, sample index, mode) — never on grid size — so grid
// refinement keeps the underlying continuum function fixed. Space-time
// samples attach smooth low-degree polynomial time profiles for the same
// reason: refinement of the time mesh resamples the identical function.

#include "nls/norms.hpp"

namespace nls {

struct SampleSpec {
    std::uint64_t seed = 0;
    int count = 1;
    int band_limit = 8;        // active modes are |k| <= band_limit
    double spectral_decay = 1.1;  // coefficients ~ gaussian * (1+|k|)^{-decay}
    GridPtr grid;

    // band_limit < n/3 keeps cubed fields alias-safe under the 2/3 rule.
    void validate() const;
};

namespace sampling {

// The index-th field of the ensemble. Deterministic in (spec.seed, index,
// mode); identical across grids sharing the same length.
Field random_band_field(const SampleSpec& spec, int index);

std::vector<Field> ensemble(const SampleSpec& spec);

// Space-time sample: F(t) = a(t) f1 + b(t) f2 with f1, f2 band-limited draws
// and a, b cubic polynomials in t/horizon with seeded gaussian coefficients.
SpaceTimeField random_spacetime(const SampleSpec& spec, const TimeMesh& mesh, int index);

// Seeded standard-normal pairs used by the generators above (exposed for
// tests): deterministic in the key, independent across keys.
cplx gaussian_pair(std::uint64_t key);

}  // namespace sampling

}  // namespace nls
