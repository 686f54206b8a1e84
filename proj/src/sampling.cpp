#include "nls/sampling.hpp"

#include <cmath>
#include <string>

namespace nls {

void SampleSpec::validate() const {
    if (!grid) throw ValidationError("sample spec: grid not set");
    if (count < 1) throw ValidationError("sample spec: count must be >= 1");
    if (band_limit < 1) throw ValidationError("sample spec: band_limit must be >= 1");
    if (3 * band_limit >= grid->n())
        throw ValidationError("sample spec: band_limit " + std::to_string(band_limit) +
                              " must stay below n/3 with n = " + std::to_string(grid->n()) +
                              " (alias-safe cubing)");
    if (!(spectral_decay >= 0.0))
        throw ValidationError("sample spec: spectral_decay must be >= 0");
}

namespace sampling {

namespace {

// splitmix64: full-period scrambler; one step per concatenated key word.
std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t a, std::uint64_t b) { return mix(mix(a) ^ b); }

double uniform01(std::uint64_t bits) {
    // strictly inside (0,1): safe under log()
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

cplx gaussian_pair(std::uint64_t key) {
    const double u1 = uniform01(mix(key));
    const double u2 = uniform01(mix(key ^ 0xd1b54a32d192ed03ULL));
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return {radius * std::cos(2.0 * M_PI * u2), radius * std::sin(2.0 * M_PI * u2)};
}

Field random_band_field(const SampleSpec& spec, int index) {
    spec.validate();
    if (index < 0 || index >= spec.count)
        throw ValidationError("sample: index " + std::to_string(index) + " outside count " +
                              std::to_string(spec.count));
    const Grid& g = *spec.grid;
    cvector coeffs(g.n(), cplx(0.0));
    const std::uint64_t sample_key = combine(spec.seed, static_cast<std::uint64_t>(index));
    for (int k = -spec.band_limit; k <= spec.band_limit; ++k) {
        const std::uint64_t mode_key =
            combine(sample_key, static_cast<std::uint64_t>(static_cast<std::int64_t>(k)));
        const cplx z = gaussian_pair(mode_key);
        const double damp = std::pow(1.0 + std::abs(k), -spec.spectral_decay);
        coeffs[g.storage_of(k)] = damp * z;
    }
    return Field::from_spectrum(spec.grid, std::move(coeffs));
}

std::vector<Field> ensemble(const SampleSpec& spec) {
    spec.validate();
    std::vector<Field> out;
    out.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) out.push_back(random_band_field(spec, i));
    return out;
}

SpaceTimeField random_spacetime(const SampleSpec& spec, const TimeMesh& mesh, int index) {
    spec.validate();
    const Field f1 = random_band_field(spec, index);
    SampleSpec shifted = spec;
    shifted.seed = combine(spec.seed, 0x5354ULL);  // independent second draw
    const Field f2 = random_band_field(shifted, index);

    const std::uint64_t profile_key =
        combine(combine(spec.seed, 0x50524fULL), static_cast<std::uint64_t>(index));
    double ca[4], cb[4];
    for (int d = 0; d < 4; ++d) {
        const cplx z = gaussian_pair(combine(profile_key, static_cast<std::uint64_t>(d)));
        ca[d] = z.real();
        cb[d] = z.imag();
    }
    auto poly = [](const double (&c)[4], double t) {
        return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
    };

    const double horizon = mesh.horizon();
    std::vector<Field> snaps;
    snaps.reserve(mesh.size());
    for (int j = 0; j < mesh.size(); ++j) {
        const double t = mesh.nodes()[j] / horizon;
        const double a = poly(ca, t);
        const double b = poly(cb, t);
        cvector vals(spec.grid->n());
        for (int m = 0; m < spec.grid->n(); ++m)
            vals[m] = a * f1.values()[m] + b * f2.values()[m];
        snaps.push_back(Field::from_values(spec.grid, std::move(vals)));
    }
    return SpaceTimeField(mesh, std::move(snaps));
}

}  // namespace sampling

}  // namespace nls
