#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nls/spectral.hpp"

using namespace nls;

namespace {

Field mode_field(const GridPtr& g, int mode, cplx amp) {
    cvector spec(g->n(), cplx(0.0));
    spec[g->storage_of(mode)] = amp;
    return Field::from_spectrum(g, std::move(spec));
}

Field random_field(const GridPtr& g, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto u = [&rng] { return (rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
    cvector spec(g->n());
    for (int k = 0; k < g->n(); ++k) {
        const double m = g->mode_of(k);
        spec[k] = cplx(u(), u()) / (1.0 + m * m);
    }
    return Field::from_spectrum(g, std::move(spec));
}

double max_diff(const cvector& a, const cvector& b) {
    double d = 0.0;
    for (size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
    return d;
}

}  // namespace

TEST_CASE("grid construction and invariants") {
    const Grid g(64, 16.0);
    CHECK(g.n() == 64);
    CHECK(g.dx() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(g.dx() * g.n() == doctest::Approx(g.length()).epsilon(1e-15));
    CHECK(g.x(0) == doctest::Approx(-8.0));
    CHECK(g.x(32) == doctest::Approx(0.0));

    const auto freqs = g.frequencies();
    REQUIRE(static_cast<int>(freqs.size()) == 64);
    // ascending, symmetric about zero except the unpaired lowest (Nyquist) entry
    CHECK(freqs.front() == doctest::Approx(-2.0 * M_PI * 32 / 16.0));
    for (int j = 1; j < 64; ++j) {
        CHECK(freqs[j] > freqs[j - 1]);
        CHECK(freqs[j] == doctest::Approx(-freqs[64 - j]).epsilon(1e-15));
    }
    // storage order starts at the zero mode
    CHECK(g.xi(0) == 0.0);
    CHECK(g.mode_of(g.n() / 2) == -32);
    for (int m = -32; m < 32; ++m) CHECK(g.mode_of(g.storage_of(m)) == m);

    CHECK_THROWS_AS(Grid(7, 1.0), ValidationError);
    CHECK_THROWS_AS(Grid(12, 1.0), ValidationError);
    CHECK_THROWS_AS(Grid(4, 1.0), ValidationError);
    CHECK_THROWS_AS(Grid(64, 0.0), ValidationError);
    CHECK_THROWS_AS(Grid(64, -3.0), ValidationError);
}

TEST_CASE("field round trip and Parseval") {
    const GridPtr g = make_grid(128, 20.0);
    for (uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        const Field f = random_field(g, seed);
        // physical -> spectral -> physical
        const Field back = Field::from_spectrum(g, cvector(f.spectrum()));
        CHECK(max_diff(back.values(), f.values()) <= 1e-12);
        const Field fwd = Field::from_values(g, cvector(f.values()));
        CHECK(max_diff(fwd.spectrum(), f.spectrum()) <= 1e-12);
        // Parseval in this normalization: dx sum|u|^2 = L sum|c|^2
        double phys = 0.0, spec = 0.0;
        for (const cplx& v : f.values()) phys += std::norm(v);
        for (const cplx& c : f.spectrum()) spec += std::norm(c);
        CHECK(g->dx() * phys == doctest::Approx(g->length() * spec).epsilon(1e-12));
    }
}

TEST_CASE("field validation errors") {
    const GridPtr g = make_grid(8, 1.0);
    CHECK_THROWS_AS(Field::from_values(nullptr, cvector(8)), ValidationError);
    CHECK_THROWS_AS(Field::from_values(g, cvector(7)), ValidationError);
    cvector bad(8, cplx(1.0));
    bad[3] = cplx(std::nan(""), 0.0);
    CHECK_THROWS_AS(Field::from_values(g, std::move(bad)), ValidationError);
    cvector badim(8, cplx(1.0));
    badim[5] = cplx(0.0, INFINITY);
    CHECK_THROWS_AS(Field::from_spectrum(g, std::move(badim)), ValidationError);
}

TEST_CASE("single on-grid mode materializes as the plane wave") {
    const GridPtr g = make_grid(64, 8.0);
    const double kappa = 2.0 * M_PI * 5 / 8.0;
    const cplx amp(0.7, -0.4);
    const Field f = mode_field(g, 5, amp);
    for (int j = 0; j < g->n(); ++j) {
        const cplx want = amp * std::polar(1.0, kappa * g->x(j));
        CHECK(std::abs(f.values()[j] - want) <= 1e-13);
    }
    // and the reverse direction isolates the coefficient
    cvector vals(g->n());
    for (int j = 0; j < g->n(); ++j) vals[j] = amp * std::polar(1.0, kappa * g->x(j));
    const Field h = Field::from_values(g, std::move(vals));
    for (int k = 0; k < g->n(); ++k) {
        const cplx want = g->mode_of(k) == 5 ? amp : cplx(0.0);
        CHECK(std::abs(h.spectrum()[k] - want) <= 1e-13);
    }
}

TEST_CASE("free propagator: identity, per-mode oracle, unitarity, group law") {
    const GridPtr g = make_grid(64, 16.0);

    SUBCASE("t = 0 is the identity") {
        const Field f = random_field(g, 42);
        const Field p = spectral::free_propagate(f, 0.0);
        CHECK(max_diff(p.values(), f.values()) <= 1e-13);
    }

    SUBCASE("closed-form action on a single mode") {
        for (int mode : {0, 1, -3, 7, -32}) {
            const double kappa = 2.0 * M_PI * mode / 16.0;
            const cplx amp(1.1, 0.3);
            for (double t : {0.05, 0.7, -1.3}) {
                const Field p = spectral::free_propagate(mode_field(g, mode, amp), t);
                const cplx factor = std::polar(1.0, -kappa * kappa * t);
                for (int j = 0; j < g->n(); ++j) {
                    const cplx want = factor * amp * std::polar(1.0, kappa * g->x(j));
                    CHECK(std::abs(p.values()[j] - want) <= 1e-12);
                }
            }
        }
    }

    SUBCASE("unitarity across 100 seeded fields") {
        for (uint64_t seed = 0; seed < 100; ++seed) {
            const Field f = random_field(g, seed);
            for (double t : {0.1, 1.0, 10.0}) {
                const Field p = spectral::free_propagate(f, t);
                CHECK(p.l2_norm() == doctest::Approx(f.l2_norm()).epsilon(1e-12));
            }
        }
    }

    SUBCASE("group law") {
        const Field f = random_field(g, 1234);
        for (auto [s, t] : {std::pair{0.3, 0.4}, {1.5, -0.9}, {2.0, 3.0}}) {
            const Field two_step = spectral::free_propagate(spectral::free_propagate(f, s), t);
            const Field one_step = spectral::free_propagate(f, s + t);
            CHECK(max_diff(two_step.values(), one_step.values()) <= 1e-11);
        }
    }

    CHECK_THROWS_AS(spectral::free_propagate(random_field(g, 1), std::nan("")),
                    ValidationError);
}

TEST_CASE("twist inverts the free propagator") {
    const GridPtr g = make_grid(64, 16.0);
    const Field f = random_field(g, 99);
    for (double t : {0.2, 1.7, 12.0}) {
        const Field round = spectral::twist(spectral::free_propagate(f, t), t);
        CHECK(max_diff(round.values(), f.values()) <= 1e-12);
    }
    CHECK(max_diff(spectral::twist(f, 0.0).values(), f.values()) <= 1e-13);
    // closed form: e^{+i kappa^2 t} on a single mode
    const double kappa = 2.0 * M_PI * 4 / 16.0;
    const Field tw = spectral::twist(mode_field(g, 4, cplx(1.0)), 0.6);
    const cplx factor = std::polar(1.0, kappa * kappa * 0.6);
    for (int j = 0; j < g->n(); ++j)
        CHECK(std::abs(tw.values()[j] - factor * std::polar(1.0, kappa * g->x(j))) <= 1e-12);
}

TEST_CASE("bessel potential: identity, oracle, inverse, commutation") {
    const GridPtr g = make_grid(64, 16.0);
    const Field f = random_field(g, 5);

    CHECK(max_diff(spectral::bessel_potential(f, 0.0).values(), f.values()) <= 1e-14);

    for (double s : {-1.5, 0.7, 2.0}) {
        for (int mode : {0, 3, -9}) {
            const double kappa = 2.0 * M_PI * mode / 16.0;
            const Field b = spectral::bessel_potential(mode_field(g, mode, cplx(2.0, -1.0)), s);
            const double mult = std::pow(1.0 + kappa * kappa, 0.5 * s);
            const cplx want_coeff = mult * cplx(2.0, -1.0);
            CHECK(std::abs(b.spectrum()[g->storage_of(mode)] - want_coeff) <= 1e-12 * mult + 1e-13);
        }
        const Field round = spectral::bessel_potential(spectral::bessel_potential(f, s), -s);
        CHECK(max_diff(round.values(), f.values()) <= 1e-12);
        // both operators are diagonal in frequency: they commute
        const Field ab = spectral::bessel_potential(spectral::free_propagate(f, 0.8), s);
        const Field ba = spectral::free_propagate(spectral::bessel_potential(f, s), 0.8);
        CHECK(max_diff(ab.values(), ba.values()) <= 1e-12);
    }
}

TEST_CASE("riesz potential: oracle and zero-mode convention") {
    const GridPtr g = make_grid(64, 16.0);

    // s = 0 on a zero-mean field is the identity
    Field f = random_field(g, 11);
    cvector spec(f.spectrum());
    spec[0] = cplx(0.0);
    const Field zero_mean = Field::from_spectrum(g, std::move(spec));
    CHECK(max_diff(spectral::riesz_potential(zero_mean, 0.0).values(), zero_mean.values()) <=
          1e-13);

    // single nonzero mode: |kappa|^s
    for (double s : {0.5, 1.0, 2.5}) {
        const double kappa = 2.0 * M_PI * (-6) / 16.0;
        const Field r = spectral::riesz_potential(mode_field(g, -6, cplx(1.0, 1.0)), s);
        const cplx want = std::pow(std::abs(kappa), s) * cplx(1.0, 1.0);
        CHECK(std::abs(r.spectrum()[g->storage_of(-6)] - want) <= 1e-12 * std::abs(want));
    }

    // constant field, s > 0 -> zero field
    const Field constant = Field::from_values(g, cvector(g->n(), cplx(3.0)));
    const Field killed = spectral::riesz_potential(constant, 1.0);
    CHECK(kernels::max_abs(killed.values().data(), killed.values().size()) <= 1e-13);

    // negative s: fine on zero-mean data, rejected with a mean component
    CHECK_NOTHROW(spectral::riesz_potential(zero_mean, -0.5));
    CHECK_THROWS_AS(spectral::riesz_potential(constant, -0.5), ValidationError);
    // inverse property on zero-mean data
    const Field round =
        spectral::riesz_potential(spectral::riesz_potential(zero_mean, 1.2), -1.2);
    CHECK(max_diff(round.values(), zero_mean.values()) <= 1e-11);
}

TEST_CASE("raw transforms tolerate unaligned and in-place buffers") {
    const GridPtr g = make_grid(32, 4.0);
    const Field f = random_field(g, 21);
    // in-place: src == dst detours through scratch
    cvector buf(f.values());
    spectral::forward(*g, buf.data(), buf.data());
    CHECK(max_diff(buf, f.spectrum()) <= 1e-13);
    // unaligned source: offset view into a larger pad
    cvector pad(g->n() + 1);
    std::copy(f.values().begin(), f.values().end(), pad.begin() + 1);
    cvector out(g->n());
    spectral::forward(*g, pad.data() + 1, out.data());
    CHECK(max_diff(out, f.spectrum()) <= 1e-13);
}
