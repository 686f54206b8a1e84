#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nls/lab.hpp"

using namespace nls;

namespace {

constexpr double kTau = 6.28318530717958647692;  // 2 pi

GridPtr small_grid() { return make_grid(64, kTau); }

SampleSpec spec_on(GridPtr g, int count, int band = 8, double alpha = 1.1,
                   std::uint64_t seed = 0xAB12CD34ULL) {
    SampleSpec s;
    s.seed = seed;
    s.count = count;
    s.band_limit = band;
    s.spectral_decay = alpha;
    s.grid = std::move(g);
    return s;
}

Field soliton(const GridPtr& g) {
    cvector vals(g->n());
    for (int j = 0; j < g->n(); ++j) vals[j] = std::sqrt(2.0) / std::cosh(g->x(j));
    return Field::from_values(g, std::move(vals));
}

Field single_mode(const GridPtr& g, int k, cplx c) {
    cvector spec(g->n(), cplx(0.0));
    spec[g->storage_of(k)] = c;
    return Field::from_spectrum(g, std::move(spec));
}

// Test-side spatial L^r norm straight from physical values.
double ref_lp(const Field& f, double r) {
    const double dx = f.grid().dx();
    double acc = 0.0;
    for (const cplx& v : f.values()) acc += std::pow(std::abs(v), r);
    return std::pow(dx * acc, 1.0 / r);
}

// Test-side H^s_p norm: Bessel multiplier on the spectrum, then L^p.
double ref_sobolev(const Field& f, double s, double p) {
    cvector spec = f.spectrum();
    for (int k = 0; k < f.grid().n(); ++k) {
        const double xi = f.grid().xi(k);
        spec[k] *= std::pow(1.0 + xi * xi, 0.5 * s);
    }
    return ref_lp(Field::from_spectrum(f.grid_ptr(), std::move(spec)), p);
}

// Test-side weighted time-l^e reduction.
double ref_time_lp(const std::vector<double>& v, const std::vector<double>& w, double e) {
    if (std::isinf(e)) {
        double m = 0.0;
        for (double x : v) m = std::max(m, x);
        return m;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) acc += w[j] * std::pow(v[j], e);
    return std::pow(acc, 1.0 / e);
}

}  // namespace

// ------------------------------------------------------------- rationalize

TEST_CASE("rationalize recovers simple fractions from doubles") {
    CHECK(lab::rationalize(0.25) == Rational(1, 4));
    CHECK(lab::rationalize(16.0) == Rational(16));
    CHECK(lab::rationalize(8.0 / 3.0) == Rational(8, 3));
    CHECK(lab::rationalize(-7.0 / 4.0) == Rational(-7, 4));
    CHECK(lab::rationalize(23.0 / 120.0) == Rational(23, 120));
    CHECK_THROWS_AS(lab::rationalize(3.14159265358979), ValidationError);
    CHECK_THROWS_AS(lab::rationalize(kInf), ValidationError);
}

// --------------------------------------------------------- decay embedding

TEST_CASE("decay check at p=2, s=0, r=2 measures pure mass conservation") {
    // Envelope exponent 1/p-1/2 = 0 and both norms are L^2: every pointwise
    // ratio is exactly 1 and every integrated ratio is the window factor
    // (2 T_w)^{1/q} from integrating a constant in time.
    const auto rep = lab::check_decay_embedding(spec_on(small_grid(), 6), 2.0, 0.0, 8.0, 2.0, 1.0);
    REQUIRE(rep.ratios.size() == 6);
    REQUIRE(rep.pointwise_ratios.size() == 6 * 33);
    for (double v : rep.pointwise_ratios) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
    const double expected = std::pow(2.0, 1.0 / 8.0);
    for (double v : rep.ratios) CHECK(v == doctest::Approx(expected).epsilon(1e-10));
    CHECK(rep.empirical_constant == rep.max_ratio);
    CHECK(rep.refinement_drift <= 1e-10);
}

TEST_CASE("decay check ratios agree with an independent recomputation") {
    // Narrow-band sample at p = 7/4: rebuild the pointwise and integrated
    // ratios from raw definitions (free flow is its own twisted constant).
    const double p = 1.75, s = 0.1, q = 8.0, r = 3.0, Tw = 1.0;
    const auto spec = spec_on(small_grid(), 1, /*band=*/1, /*alpha=*/0.6);
    const auto rep = lab::check_decay_embedding(spec, p, s, q, r, Tw);

    const Field f = sampling::random_band_field(spec, 0);
    const TimeMesh mesh = TimeMesh::uniform(2.0 * Tw, 32);
    const double den = ref_sobolev(f, s, p);
    std::vector<double> rnorms(mesh.size());
    for (int j = 0; j < mesh.size(); ++j) {
        const double t = mesh.nodes()[j] - Tw;
        const Field u = spectral::free_propagate(f, t);
        rnorms[j] = ref_lp(u, r);
        const double env = std::pow(4.0 * 3.14159265358979323846 * std::abs(t), 1.0 / p - 0.5);
        CHECK(rep.pointwise_ratios[j] == doctest::Approx(env * rnorms[j] / den).epsilon(1e-9));
    }
    const double lhs = ref_time_lp(rnorms, mesh.weights(), q);
    CHECK(rep.ratios[0] == doctest::Approx(lhs / den).epsilon(1e-9));
}

TEST_CASE("decay check is stable under refinement and deterministic") {
    const auto spec = spec_on(small_grid(), 100, 8, 0.6);
    const auto rep = lab::check_decay_embedding(spec, 1.75, 0.1, 8.0, 3.0, 1.0);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.refinement_drift <= 0.05);
    CHECK(rep.median_ratio <= rep.max_ratio);
    const auto rerun = lab::check_decay_embedding(spec, 1.75, 0.1, 8.0, 3.0, 1.0);
    CHECK(rep.ratios == rerun.ratios);
    CHECK(rep.pointwise_ratios == rerun.pointwise_ratios);
}

TEST_CASE("decay check rejects out-of-hypothesis exponents") {
    // s >= 1 - 1/p - 1/r fails: 1 - 1/2 - 1/8 = 3/8 > 0.
    CHECK_THROWS_AS(lab::check_decay_embedding(spec_on(small_grid(), 1), 2.0, 0.0, 8.0, 8.0, 1.0),
                    ValidationError);
    // q (1/p - 1/2) < 1 fails at p = 4/3, q = 16: 16/4 = 4.
    CHECK_THROWS_AS(
        lab::check_decay_embedding(spec_on(small_grid(), 1), 4.0 / 3.0, 0.9, 16.0, 2.0, 1.0),
        ValidationError);
}

// -------------------------------------------------- homogeneous Strichartz

TEST_CASE("degenerate endpoint (2, inf, 2) bypasses the gate and returns unit ratios") {
    const auto rep =
        lab::check_homogeneous_strichartz(spec_on(small_grid(), 10), 2.0, kInf, 2.0, 1.0);
    for (double v : rep.ratios) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.name == "homogeneous_strichartz(degenerate)");
    CHECK(rep.refinement_drift <= 1e-12);
}

TEST_CASE("homogeneous check at (2, 16, 8/3) is finite, stable, and recomputable") {
    const auto spec = spec_on(small_grid(), 100);
    const auto rep = lab::check_homogeneous_strichartz(spec, 2.0, 16.0, 8.0 / 3.0, 1.0);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.refinement_drift <= 0.05);

    // Independent recomputation of sample 0.
    const Field f = sampling::random_band_field(spec, 0);
    const TimeMesh mesh = TimeMesh::uniform(2.0, 32);
    std::vector<double> rn(mesh.size());
    for (int j = 0; j < mesh.size(); ++j)
        rn[j] = ref_lp(spectral::free_propagate(f, mesh.nodes()[j] - 1.0), 8.0 / 3.0);
    const double expect = ref_time_lp(rn, mesh.weights(), 16.0) / ref_lp(f, 2.0);
    CHECK(rep.ratios[0] == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("homogeneous check rejects the invalid pair (2, 2, inf)") {
    CHECK_THROWS_AS(lab::check_homogeneous_strichartz(spec_on(small_grid(), 1), 2.0, 2.0, kInf, 1.0),
                    ValidationError);
}

// ------------------------------------------------------- Fourier-side check

TEST_CASE("Fourier-side check on the diagonal q = r = 3p is finite and recomputable") {
    const auto spec = spec_on(small_grid(), 100);
    const auto rep = lab::check_fefferman_stein(spec, 2.0, 6.0, 6.0, 1.0);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.refinement_drift <= 0.05);

    // Independent recomputation of sample 0, including the transform-side
    // norm hat(f)(xi_k) = length c_k / sqrt(2 pi) integrated in dxi.
    const Field f = sampling::random_band_field(spec, 0);
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int k = 0; k < g.n(); ++k)
        acc += std::pow(std::abs(f.spectrum()[k]) * g.length() / std::sqrt(kTau), 2.0);
    const double rhs = std::sqrt(acc * kTau / g.length());  // p' = 2
    const TimeMesh mesh = TimeMesh::uniform(2.0, 32);
    std::vector<double> rn(mesh.size());
    for (int j = 0; j < mesh.size(); ++j)
        rn[j] = ref_lp(spectral::free_propagate(f, mesh.nodes()[j] - 1.0), 6.0);
    const double expect = ref_time_lp(rn, mesh.weights(), 6.0) / rhs;
    CHECK(rep.ratios[0] == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("Fourier-side check rejects a pair outside 0 < 1/q < min(1/2-1/r, 1/4)") {
    // (2, 4, inf): scaling 2/q + 1/r = 1/2 holds but 1/q = 1/4 is not < 1/4.
    CHECK_THROWS_AS(lab::check_fefferman_stein(spec_on(small_grid(), 1), 2.0, 4.0, kInf, 1.0),
                    ValidationError);
}

// --------------------------------------------- inhomogeneous Strichartz

TEST_CASE("inhomogeneous check on the main tuple is finite and stable") {
    const auto tuple = exponents::main_exponents(Rational(2), Rational(1, 4));
    const auto spec = spec_on(small_grid(), 100);
    const auto rep = lab::check_inhomogeneous_strichartz(spec, tuple, 1.0);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.refinement_drift <= 0.05);
    const auto rerun = lab::check_inhomogeneous_strichartz(spec, tuple, 1.0);
    CHECK(rep.ratios == rerun.ratios);
}

TEST_CASE("inhomogeneous ratio agrees with per-mode fine quadrature of the forcing") {
    // Band-1 forcing: three active modes, each evolving independently. The
    // Duhamel coefficient of mode k at node t is
    //   int_0^t e^{-i (t-tau) xi_k^2} Fhat_k(tau) dtau,
    // recomputed here by fine composite Simpson (the time profiles are cubic
    // polynomials, so Simpson is exact) and compared through the full ratio.
    const auto tuple = exponents::main_exponents(Rational(2), Rational(1, 4));
    const GridPtr g = make_grid(32, kTau);
    const auto spec = spec_on(g, 1, /*band=*/1, /*alpha=*/0.6, /*seed=*/0x77CABA11ULL);
    const double window = 1.0;
    const auto rep = lab::check_inhomogeneous_strichartz(spec, tuple, window);

    const TimeMesh coarse = TimeMesh::uniform(window, 32);
    const int fine_n = 4096;
    const TimeMesh fine = TimeMesh::uniform(window, fine_n);
    const SpaceTimeField F_fine = sampling::random_spacetime(spec, fine, 0);
    const SpaceTimeField F_coarse = sampling::random_spacetime(spec, coarse, 0);

    // Duhamel spectra at the coarse nodes via fine Simpson per mode.
    std::vector<Field> duh;
    const double h = window / fine_n;
    for (int j = 0; j < coarse.size(); ++j) {
        const double t = coarse.nodes()[j];
        const int m_end = static_cast<int>(std::llround(t / h));
        cvector spec_t(g->n(), cplx(0.0));
        for (int k = 0; k < g->n(); ++k) {
            const double xi2 = g->xi(k) * g->xi(k);
            cplx acc(0.0, 0.0);
            for (int m = 0; m <= m_end; ++m) {
                const double tau = fine.nodes()[m];
                double w = (m == 0 || m == m_end) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
                w *= h / 3.0;
                if (m_end == 0) w = 0.0;
                const cplx phase = std::polar(1.0, -(t - tau) * xi2);
                acc += w * phase * F_fine.at(m).spectrum()[k];
            }
            spec_t[k] = acc;
        }
        duh.push_back(Field::from_spectrum(g, std::move(spec_t)));
    }
    const double q = tuple.inv_q.inv().to_double();
    const double r = tuple.inv_r.inv().to_double();
    const double gamma = tuple.inv_gamma.inv().to_double();
    const double rho = tuple.inv_rho.inv().to_double();
    std::vector<double> lhs_nodes(coarse.size()), rhs_nodes(coarse.size());
    for (int j = 0; j < coarse.size(); ++j) {
        lhs_nodes[j] = ref_lp(duh[j], r);
        rhs_nodes[j] = ref_lp(F_coarse.at(j), rho);
    }
    const double expect = ref_time_lp(lhs_nodes, coarse.weights(), q) /
                          ref_time_lp(rhs_nodes, coarse.weights(), gamma);
    CHECK(rep.ratios[0] == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("inhomogeneous check rejects a corrupted tuple") {
    auto tuple = exponents::main_exponents(Rational(2), Rational(1, 4));
    tuple.inv_gamma = tuple.inv_gamma + Rational(1, 100);  // breaks the scaling identity
    CHECK_THROWS_AS(lab::check_inhomogeneous_strichartz(spec_on(small_grid(), 1), tuple, 1.0),
                    ValidationError);
}

// ------------------------------------------------------- weighted Duhamel

TEST_CASE("weighted Duhamel check is finite and stable on the (7/4, 0.2) tuple") {
    const auto tuple = exponents::main_exponents(Rational(7, 4), Rational(1, 5));
    const auto spec = spec_on(small_grid(), 100);
    const auto rep = lab::check_duhamel_weighted(spec, tuple, 1.0);
    CHECK(std::isfinite(rep.max_ratio));
    CHECK(rep.max_ratio > 0.0);
    CHECK(rep.refinement_drift <= 0.05);
}

TEST_CASE("weighted Duhamel ratio agrees with per-mode fine quadrature") {
    const auto tuple = exponents::main_exponents(Rational(7, 4), Rational(1, 5));
    const GridPtr g = make_grid(32, kTau);
    const auto spec = spec_on(g, 1, 1, 0.6, 0x600DF00DULL);
    const double window = 1.0;
    const auto rep = lab::check_duhamel_weighted(spec, tuple, window);

    const double p = tuple.p.to_double();
    const double s = tuple.s.to_double();
    const double sigma = tuple.inv_sigma->inv().to_double();
    const double rho = tuple.inv_rho.inv().to_double();
    const double e = 1.0 / p - 0.5;

    const TimeMesh coarse = TimeMesh::uniform(window, 32);
    const int fine_n = 4096;
    const TimeMesh fine = TimeMesh::uniform(window, fine_n);
    const SpaceTimeField F_fine = sampling::random_spacetime(spec, fine, 0);
    const SpaceTimeField F_coarse = sampling::random_spacetime(spec, coarse, 0);

    const double h = window / fine_n;
    double lhs = 0.0;
    for (int j = 0; j < coarse.size(); ++j) {
        const double t = coarse.nodes()[j];
        const int m_end = static_cast<int>(std::llround(t / h));
        cvector tw(g->n(), cplx(0.0));
        for (int k = 0; k < g->n(); ++k) {
            const double xi2 = g->xi(k) * g->xi(k);
            cplx acc(0.0, 0.0);
            for (int m = 0; m <= m_end && m_end > 0; ++m) {
                const double tau = fine.nodes()[m];
                double w = (m == 0 || m == m_end) ? 1.0 : (m % 2 == 1 ? 4.0 : 2.0);
                w *= h / 3.0;
                acc += w * std::polar(1.0, -(t - tau) * xi2) * F_fine.at(m).spectrum()[k];
            }
            // e^{-it d^2/dx^2} twist is the multiplier e^{+i t xi^2}.
            tw[k] = std::polar(1.0, t * xi2) * acc;
        }
        lhs = std::max(lhs, ref_sobolev(Field::from_spectrum(g, std::move(tw)), s, p));
    }
    std::vector<double> weighted(coarse.size());
    for (int j = 0; j < coarse.size(); ++j)
        weighted[j] =
            std::pow(coarse.nodes()[j], e) * ref_sobolev(F_coarse.at(j), s, rho);
    const double rhs = ref_time_lp(weighted, coarse.weights(), sigma);
    CHECK(rep.ratios[0] == doctest::Approx(lhs / rhs).epsilon(1e-6));
}

TEST_CASE("weighted Duhamel check requires a tuple carrying sigma") {
    auto tuple = exponents::main_exponents(Rational(2), Rational(1, 4));
    tuple.inv_sigma.reset();
    CHECK_THROWS_AS(lab::check_duhamel_weighted(spec_on(small_grid(), 1), tuple, 1.0),
                    ValidationError);
}

// ------------------------------------------------------------- trilinear

TEST_CASE("trilinear ratio of the zero triple is zero") {
    const GridPtr g = small_grid();
    const Field z = Field::from_values(g, cvector(g->n(), cplx(0.0)));
    CHECK(lab::trilinear_ratio(z, z, z, 2.0, 0.25, 0.5) == 0.0);
}

TEST_CASE("trilinear ratio matches the single-mode closed form") {
    // Modes (k1, k2, k3) combine into the single mode mu = k1 + k2 - k3 with
    // time phase omega = xi1^2 + xi2^2 - xi3^2; the Duhamel coefficient is
    //   c1 c2 conj(c3) e^{-i t xi_mu^2} int_0^t e^{i tau (xi_mu^2 - omega)} dtau,
    // so every norm in the ratio reduces to explicit scalars. The product is
    // also a separable forcing a(tau) g(x), cross-checking the quadrature
    // against direct evaluation.
    const GridPtr g = small_grid();
    const double p = 2.0, s = 0.25, T = 0.5;
    const auto tuple = exponents::main_exponents(Rational(2), Rational(1, 4));
    const double q = tuple.inv_q.inv().to_double();
    const double r = tuple.inv_r.inv().to_double();

    for (const auto& modes : {std::array<int, 3>{3, 4, 5}, std::array<int, 3>{3, 4, 6}}) {
        const cplx c1(0.7, -0.2), c2(-0.4, 1.1), c3(0.3, 0.5);
        const Field u1 = single_mode(g, modes[0], c1);
        const Field u2 = single_mode(g, modes[1], c2);
        const Field u3 = single_mode(g, modes[2], c3);
        const int mu = modes[0] + modes[1] - modes[2];
        const double omega = double(modes[0]) * modes[0] + double(modes[1]) * modes[1] -
                             double(modes[2]) * modes[2];
        const double xi2 = double(mu) * mu;
        const cplx amp = c1 * c2 * std::conj(c3);

        const TimeMesh mesh = TimeMesh::uniform(T, 24);
        auto envelope = [&](double t) {  // |int_0^t e^{i tau (xi2 - omega)} dtau|
            const double d = xi2 - omega;
            if (d == 0.0) return t;
            return std::abs((std::polar(1.0, t * d) - 1.0) / cplx(0.0, d));
        };
        const double bess_mu = std::pow(1.0 + xi2, 0.5 * s);
        double tw_sup = 0.0;
        std::vector<double> hnodes(mesh.size());
        for (int j = 0; j < mesh.size(); ++j) {
            const double t = mesh.nodes()[j];
            const double mag = std::abs(amp) * envelope(t) * bess_mu;
            tw_sup = std::max(tw_sup, mag * std::pow(kTau, 1.0 / p));
            hnodes[j] = mag * std::pow(kTau, 1.0 / r);
        }
        const double lhs = tw_sup + ref_time_lp(hnodes, mesh.weights(), q);
        double rhs = 1.0;
        for (int i = 0; i < 3; ++i) {
            const double xk = double(modes[i]) * modes[i];
            const double mag = std::abs(i == 0 ? c1 : i == 1 ? c2 : c3) *
                               std::pow(1.0 + xk, 0.5 * s) * std::pow(kTau, 1.0 / r);
            std::vector<double> nodes(mesh.size(), mag);
            rhs *= ref_time_lp(nodes, mesh.weights(), q);
        }
        const double got = lab::trilinear_ratio(u1, u2, u3, p, s, T, 24);
        CHECK(got == doctest::Approx(lhs / rhs).epsilon(1e-6));
    }
}

TEST_CASE("trilinear window sweep fits the predicted smallness power") {
    const auto spec = spec_on(small_grid(), 8, /*band=*/12, /*alpha=*/1.1, 0x7312D00DULL);
    const std::vector<double> t_list = {0.5, 0.125, 0.03125, 0.0078125};
    const auto rep = lab::check_trilinear(spec, 2.0, 0.25, t_list);
    CHECK(rep.fitted_slope == doctest::Approx(0.75).epsilon(0.07));
    CHECK(rep.t_values == t_list);
    REQUIRE(rep.max_ratios.size() == 4);
    for (double m : rep.max_ratios) CHECK(m > 0.0);
    CHECK(rep.report.ratios.size() == 4 * 8);
    CHECK(rep.report.refinement_drift <= 0.05);
    const auto rerun = lab::check_trilinear(spec, 2.0, 0.25, t_list);
    CHECK(rep.fitted_slope == rerun.fitted_slope);
    CHECK(rep.report.ratios == rerun.report.ratios);
}

TEST_CASE("trilinear check validates band and window list") {
    CHECK_THROWS_AS(lab::check_trilinear(spec_on(small_grid(), 1, /*band=*/5), 2.0, 0.25,
                                         {0.5, 0.25}),
                    ValidationError);
    CHECK_THROWS_AS(lab::check_trilinear(spec_on(small_grid(), 1, 12), 2.0, 0.25, {0.5}),
                    ValidationError);
    // (p, s) outside the admissible box.
    CHECK_THROWS_AS(lab::check_trilinear(spec_on(small_grid(), 1, 12), 1.25, 0.25, {0.5, 0.25}),
                    ValidationError);
}

// ------------------------------------------------------ fractional Leibniz

TEST_CASE("fractional Leibniz at s = 0 reduces to a discrete Hoelder bound") {
    const auto rep =
        lab::check_fractional_leibniz(spec_on(small_grid(), 25), 0.0, 8.0 / 3.0, 8.0 / 5.0);
    for (double v : rep.ratios) CHECK(v <= 1.0 + 1e-10);
    CHECK(rep.max_ratio > 0.0);
}

TEST_CASE("fractional Leibniz ratios match a test-side recomputation with kappa = 4") {
    // At (r, rho) = (8/3, 8/5): 1/kappa = 5/8 - 3/8 = 1/4.
    const double s = 0.25, r = 8.0 / 3.0, rho = 8.0 / 5.0;
    const auto spec = spec_on(small_grid(), 3);
    const auto rep = lab::check_fractional_leibniz(spec, s, r, rho);
    SampleSpec draw = spec;  // count is triples; draws live in a 3x index space
    draw.count = 9;
    for (int i = 0; i < 3; ++i) {
        const Field u1 = sampling::random_band_field(draw, 3 * i);
        const Field u2 = sampling::random_band_field(draw, 3 * i + 1);
        const Field u3 = sampling::random_band_field(draw, 3 * i + 2);
        const int n = u1.grid().n();
        cvector triple(n), pair(n);
        for (int j = 0; j < n; ++j) {
            pair[j] = u2.values()[j] * std::conj(u3.values()[j]);
            triple[j] = u1.values()[j] * pair[j];
        }
        const Field tp = Field::from_values(u1.grid_ptr(), std::move(triple));
        const Field pp = Field::from_values(u1.grid_ptr(), std::move(pair));
        const double lhs = ref_sobolev(tp, s, rho);
        const double rhs = ref_sobolev(u1, s, r) * ref_lp(pp, 4.0) +
                           ref_lp(u1, 8.0) * ref_sobolev(pp, s, 2.0);
        CHECK(rep.ratios[i] == doctest::Approx(lhs / rhs).epsilon(1e-9));
    }
    CHECK(rep.refinement_drift <= 0.05);
}

TEST_CASE("fractional Leibniz rejects bad exponent combinations") {
    // rho >= r makes 1/kappa nonpositive.
    CHECK_THROWS_AS(lab::check_fractional_leibniz(spec_on(small_grid(), 1), 0.25, 1.6, 2.0),
                    ValidationError);
    CHECK_THROWS_AS(lab::check_fractional_leibniz(spec_on(small_grid(), 1), -0.25, 8.0 / 3.0,
                                                  8.0 / 5.0),
                    ValidationError);
}

// ------------------------------------------------------------- uniqueness

TEST_CASE("uniqueness experiment: three integrators agree on soliton data at (2, 0.2)") {
    const GridPtr g = make_grid(256, 16.0 * 3.14159265358979323846);
    const Field phi = soliton(g);
    SolverConfig cfg;
    cfg.grid = g;
    cfg.p = 2.0;
    cfg.s = 0.2;
    const double T = 32.0 * solver::select_local_time(phi, cfg).T;
    const auto rep = lab::uniqueness_experiment(phi, 2.0, 0.2, T, cfg);

    CHECK(rep.case_id == 2);
    CHECK(rep.q == doctest::Approx(60.0 / 11.0).epsilon(1e-14));
    CHECK(rep.r == doctest::Approx(10.0 / 3.0).epsilon(1e-14));
    CHECK(rep.d_picard_splitstep <= 1e-6);
    CHECK(rep.d_picard_refined <= 1e-6);
    CHECK(rep.d_splitstep_refined <= 1e-6);
    CHECK(rep.tw_picard_splitstep <= 1e-5);
    CHECK(rep.eta > 0.0);
    CHECK(rep.empirical_c > 0.0);
    CHECK(std::isfinite(rep.t0));
    CHECK(rep.t0 > 0.0);
    // Closed-form inversion: T0 satisfies 3 C T0^{1-1/p} eta^2 = 1/2 exactly.
    const double lhs = 3.0 * rep.empirical_c * std::pow(rep.t0, 1.0 - 1.0 / rep.p) * rep.eta *
                       rep.eta;
    CHECK(lhs == doctest::Approx(0.5).epsilon(1e-9));

    const auto rerun = lab::uniqueness_experiment(phi, 2.0, 0.2, T, cfg);
    CHECK(rep.d_picard_splitstep == rerun.d_picard_splitstep);
    CHECK(rep.d_picard_refined == rerun.d_picard_refined);
    CHECK(rep.eta == rerun.eta);
    CHECK(rep.empirical_c == rerun.empirical_c);
    CHECK(rep.t0 == rerun.t0);
}

TEST_CASE("uniqueness experiment runs the low-regularity case tuple at (3/2, 0.05)") {
    const GridPtr g = make_grid(128, 8.0 * 3.14159265358979323846);
    const Field phi = soliton(g);
    SolverConfig cfg;
    cfg.grid = g;
    cfg.p = 1.5;
    cfg.s = 0.05;
    const double T = 32.0 * solver::select_local_time(phi, cfg).T;
    const auto rep = lab::uniqueness_experiment(phi, 1.5, 0.05, T, cfg);
    CHECK(rep.case_id == 1);
    CHECK(rep.q == doctest::Approx(120.0 / 23.0).epsilon(1e-14));
    CHECK(rep.r == doctest::Approx(60.0 / 17.0).epsilon(1e-14));
    CHECK(rep.d_picard_splitstep <= 1e-6);
    CHECK(rep.d_picard_refined <= 1e-6);
    CHECK(rep.d_splitstep_refined <= 1e-6);
    CHECK(rep.t0 > 0.0);
    CHECK(std::isfinite(rep.t0));
}

TEST_CASE("uniqueness experiment gates on the critical threshold") {
    const GridPtr g = make_grid(128, 8.0 * 3.14159265358979323846);
    const Field phi = soliton(g);
    SolverConfig cfg;
    cfg.grid = g;
    // s = 0.05 < 2/3 - 1/2 = 1/6 at p = 2.
    CHECK_THROWS_AS(lab::uniqueness_experiment(phi, 2.0, 0.05, 0.01, cfg), ValidationError);
    CHECK_THROWS_AS(lab::uniqueness_experiment(phi, 1.3, 0.1, 0.01, cfg), ValidationError);
}

// ---------------------------------------------------------- report invariant

TEST_CASE("InequalityReport validation catches inconsistent summaries") {
    InequalityReport rep;
    rep.ratios = {0.5, 1.5};
    rep.max_ratio = 1.5;
    rep.empirical_constant = 1.5;
    CHECK_NOTHROW(rep.validate());
    rep.empirical_constant = 2.0;
    CHECK_THROWS_AS(rep.validate(), ValidationError);
    rep.empirical_constant = 1.5;
    rep.ratios[0] = -0.1;
    CHECK_THROWS_AS(rep.validate(), ValidationError);
}
