#include "nls/lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nls {

void InequalityReport::validate() const {
    for (double v : ratios)
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("InequalityReport: ratios must be finite and nonnegative");
    double mx = 0.0;
    for (double v : ratios) mx = std::max(mx, v);
    if (empirical_constant != mx || max_ratio != mx)
        throw ValidationError("InequalityReport: empirical_constant must equal max of ratios");
}

namespace lab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMeshIntervals = 32;      // time-quadrature cells per window
// Per trilinear window. The twisted sup runs over envelope components
// oscillating at |xi_mu^2 - omega| <= 2 B^2 scaled rates, and the value error
// of a mesh-sampled sup is ~(d h)^2/2 at the peak; 96 cells keep that under a
// couple of percent so the refinement drift is an honest stability signal
// (the fitted slope itself is mesh-exact by the family's self-similarity).
constexpr int kTrilinearIntervals = 96;

double median_of(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// max over ratios with the finiteness the report invariant demands.
double max_of(const std::vector<double>& v) {
    double mx = 0.0;
    for (double x : v) {
        if (!std::isfinite(x) || x < 0.0)
            throw SolverError("lab: measured a nonfinite or negative ratio");
        mx = std::max(mx, x);
    }
    return mx;
}

InequalityReport finalize(std::string name, double window, std::vector<double> base,
                          const std::vector<double>& refined,
                          std::vector<double> pointwise = {}) {
    InequalityReport rep;
    rep.name = std::move(name);
    rep.window = window;
    rep.max_ratio = max_of(base);
    rep.median_ratio = median_of(base);
    rep.empirical_constant = rep.max_ratio;
    const double mx2 = max_of(refined);
    if (rep.max_ratio == 0.0)
        rep.refinement_drift = mx2 == 0.0 ? 0.0 : kInf;
    else
        rep.refinement_drift = std::abs(mx2 - rep.max_ratio) / rep.max_ratio;
    rep.ratios = std::move(base);
    rep.pointwise_ratios = std::move(pointwise);
    rep.validate();
    return rep;
}

void require_pass(const exponents::ValidationReport& rep, const std::string& which) {
    if (rep.overall) return;
    std::ostringstream os;
    os << which << ": hypothesis violated:";
    for (const auto& c : rep.conditions)
        if (!c.pass) os << " [" << c.name << ": " << c.detail << "]";
    throw ValidationError(os.str());
}

// 1/x as an exact rational; infinity is the honest reciprocal 0.
Rational inv_exponent(double x) {
    if (std::isinf(x)) return Rational(0);
    return rationalize(x).inv();
}

// (sum_j w_j v_j^e)^(1/e) for finite e >= 1; discrete max at e = infinity.
double time_lp(const std::vector<double>& values, const std::vector<double>& weights, double e) {
    if (std::isinf(e)) {
        double mx = 0.0;
        for (double v : values) mx = std::max(mx, v);
        return mx;
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) acc += weights[j] * std::pow(values[j], e);
    return std::pow(acc, 1.0 / e);
}

SampleSpec doubled(const SampleSpec& spec) {
    SampleSpec d = spec;
    d.grid = make_grid(2 * spec.grid->n(), spec.grid->length());
    return d;
}

Field triple_product(const Field& a, const Field& b, const Field& c) {
    const int n = a.grid().n();
    cvector vals(n);
    for (int i = 0; i < n; ++i) vals[i] = a.values()[i] * b.values()[i] * std::conj(c.values()[i]);
    return Field::from_values(a.grid_ptr(), std::move(vals));
}

Field pair_product_conj(const Field& a, const Field& b) {
    const int n = a.grid().n();
    cvector vals(n);
    for (int i = 0; i < n; ++i) vals[i] = a.values()[i] * std::conj(b.values()[i]);
    return Field::from_values(a.grid_ptr(), std::move(vals));
}

SpaceTimeField subtract(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (!a.grid().same_as(b.grid()) || a.mesh().size() != b.mesh().size())
        throw ValidationError("lab: fields to subtract live on different discretizations");
    std::vector<Field> out;
    out.reserve(a.mesh().size());
    for (int j = 0; j < a.mesh().size(); ++j) {
        cvector d = a.at(j).values();
        const cvector& bv = b.at(j).values();
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= bv[i];
        out.push_back(Field::from_values(a.at(j).grid_ptr(), std::move(d)));
    }
    return SpaceTimeField(a.mesh(), std::move(out));
}

// Free flow of f over the window [shift, horizon + shift]: snapshot at mesh
// node t_j is taken at physical time t_j + shift (norm weights are
// translation invariant, so mixed norms over the mesh equal window norms).
SpaceTimeField free_flow(const Field& f, const TimeMesh& mesh, double shift) {
    std::vector<Field> snaps;
    snaps.reserve(mesh.size());
    for (int j = 0; j < mesh.size(); ++j)
        snaps.push_back(spectral::free_propagate(f, mesh.nodes()[j] + shift));
    return SpaceTimeField(mesh, std::move(snaps));
}

// Spectral zero-padding onto a grid of doubled resolution (same length).
Field upsample2(const Field& f) {
    const Grid& g = f.grid();
    GridPtr g2 = make_grid(2 * g.n(), g.length());
    cvector spec(static_cast<std::size_t>(2 * g.n()), cplx(0.0, 0.0));
    for (int k = 0; k < g.n(); ++k) spec[g2->storage_of(g.mode_of(k))] = f.spectrum()[k];
    return Field::from_spectrum(std::move(g2), std::move(spec));
}

// Restriction to the base grid by sampling even physical points (the grids
// nest exactly: x_{2j} on the doubled grid is x_j on the base grid).
Field restrict2(const Field& f, const GridPtr& base) {
    cvector vals(base->n());
    for (int j = 0; j < base->n(); ++j) vals[j] = f.values()[2 * j];
    return Field::from_values(base, std::move(vals));
}

// ---------------------------------------------------------------- decay check

struct DecayRun {
    std::vector<double> ratios;
    std::vector<double> pointwise;
};

DecayRun run_decay(const SampleSpec& spec, double p, double s, double q, double r, double window,
                   int intervals) {
    const TimeMesh mesh = TimeMesh::uniform(2.0 * window, intervals);
    const double e = 1.0 / p - 0.5;
    DecayRun out;
    for (int i = 0; i < spec.count; ++i) {
        const Field f = sampling::random_band_field(spec, i);
        const SpaceTimeField u = free_flow(f, mesh, -window);
        double den_sup = 0.0;
        for (int j = 0; j < mesh.size(); ++j) {
            const double t = mesh.nodes()[j] - window;
            const double den = norms::sobolev_norm(spectral::twist(u.at(j), t), s, p);
            den_sup = std::max(den_sup, den);
            const double num = norms::lp_norm(u.at(j), r) * std::pow(4.0 * kPi * std::abs(t), e);
            out.pointwise.push_back(den == 0.0 ? 0.0 : num / den);
        }
        const double lhs = norms::mixed_norm(u, MixedNormSpec::lebesgue(q, r));
        out.ratios.push_back(den_sup == 0.0 ? 0.0 : lhs / den_sup);
    }
    return out;
}

// ----------------------------------------------------- free-flow window checks

// Shared shape of the homogeneous and Fourier-side checks: mixed L^q L^r of
// the free flow over [-T_w, T_w] against a per-sample data norm.
template <class DataNorm>
std::vector<double> run_flow_ratio(const SampleSpec& spec, double q, double r, double window,
                                   int intervals, DataNorm&& data_norm) {
    const TimeMesh mesh = TimeMesh::uniform(2.0 * window, intervals);
    std::vector<double> ratios;
    ratios.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        const Field f = sampling::random_band_field(spec, i);
        const SpaceTimeField u = free_flow(f, mesh, -window);
        const double rhs = data_norm(f);
        const double lhs = norms::mixed_norm(u, MixedNormSpec::lebesgue(q, r));
        ratios.push_back(rhs == 0.0 ? 0.0 : lhs / rhs);
    }
    return ratios;
}

// ------------------------------------------------------------- Duhamel checks

std::vector<double> run_inhomogeneous(const SampleSpec& spec, const exponents::ExponentTuple& t,
                                      double window, int intervals) {
    const TimeMesh mesh = TimeMesh::uniform(window, intervals);
    const double q = t.inv_q.is_zero() ? kInf : t.inv_q.inv().to_double();
    const double r = t.inv_r.is_zero() ? kInf : t.inv_r.inv().to_double();
    const double gamma = t.inv_gamma.inv().to_double();
    const double rho = t.inv_rho.inv().to_double();
    std::vector<double> ratios;
    ratios.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        const SpaceTimeField F = sampling::random_spacetime(spec, mesh, i);
        std::vector<double> rho_norms(mesh.size());
        for (int j = 0; j < mesh.size(); ++j) rho_norms[j] = norms::lp_norm(F.at(j), rho);
        const double rhs = time_lp(rho_norms, mesh.weights(), gamma);
        const SpaceTimeField duh(mesh, solver::duhamel_all(F));
        const double lhs = norms::mixed_norm(duh, MixedNormSpec::lebesgue(q, r));
        ratios.push_back(rhs == 0.0 ? 0.0 : lhs / rhs);
    }
    return ratios;
}

std::vector<double> run_duhamel_weighted(const SampleSpec& spec, const exponents::ExponentTuple& t,
                                         double window, int intervals) {
    const TimeMesh mesh = TimeMesh::uniform(window, intervals);
    const double p = t.p.to_double();
    const double s = t.s.to_double();
    const double sigma = t.inv_sigma->inv().to_double();
    const double rho = t.inv_rho.inv().to_double();
    const double e = 1.0 / p - 0.5;
    std::vector<double> ratios;
    ratios.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        const SpaceTimeField F = sampling::random_spacetime(spec, mesh, i);
        std::vector<double> weighted(mesh.size());
        for (int j = 0; j < mesh.size(); ++j) {
            // 0^0 = 1 keeps the origin node at p = 2; 0^e = 0 drops it otherwise.
            const double w = std::pow(mesh.nodes()[j], e);
            weighted[j] = w * norms::sobolev_norm(F.at(j), s, rho);
        }
        const double rhs = time_lp(weighted, mesh.weights(), sigma);
        const SpaceTimeField duh(mesh, solver::duhamel_all(F));
        const double lhs = norms::twisted_sup_norm(duh, s, p);
        ratios.push_back(rhs == 0.0 ? 0.0 : lhs / rhs);
    }
    return ratios;
}

// ------------------------------------------------------------ trilinear check

// Band-pass triple draws: positive modes in [k_lo, band_limit] keyed by
// (seed, sample, field, mode) only, so every window's rescaled grid sees the
// identical coefficients.
Field band_pass_field(const SampleSpec& spec, const GridPtr& grid, int sample, int field_idx,
                      int k_lo) {
    cvector spec_coeffs(static_cast<std::size_t>(grid->n()), cplx(0.0, 0.0));
    for (int k = k_lo; k <= spec.band_limit; ++k) {
        const std::uint64_t key = (static_cast<std::uint64_t>(sample) << 40) ^
                                  (static_cast<std::uint64_t>(field_idx) << 32) ^
                                  static_cast<std::uint64_t>(k) ^
                                  (spec.seed * 0x9E3779B97F4A7C15ULL);
        const cplx g = sampling::gaussian_pair(key);
        spec_coeffs[grid->storage_of(k)] = g * std::pow(1.0 + k, -spec.spectral_decay);
    }
    return Field::from_spectrum(grid, std::move(spec_coeffs));
}

struct TrilinearRun {
    std::vector<double> normalized;  // per (window, sample), divided by T^theta
    std::vector<double> max_raw;     // per window
};

TrilinearRun run_trilinear(const SampleSpec& spec, double p, double s,
                           const std::vector<double>& t_list, int k_lo, int intervals) {
    const double theta = 1.0 + s - 1.0 / p;
    const double t_base = *std::max_element(t_list.begin(), t_list.end());
    TrilinearRun out;
    for (double T : t_list) {
        const double lambda = std::sqrt(t_base / T);
        const GridPtr grid = make_grid(spec.grid->n(), spec.grid->length() / lambda);
        double mx = 0.0;
        for (int i = 0; i < spec.count; ++i) {
            const Field u1 = band_pass_field(spec, grid, i, 0, k_lo);
            const Field u2 = band_pass_field(spec, grid, i, 1, k_lo);
            const Field u3 = band_pass_field(spec, grid, i, 2, k_lo);
            const double ratio = trilinear_ratio(u1, u2, u3, p, s, T, intervals);
            out.normalized.push_back(ratio / std::pow(T, theta));
            mx = std::max(mx, ratio);
        }
        out.max_raw.push_back(mx);
    }
    return out;
}

// ---------------------------------------------------------------- Leibniz check

std::vector<double> run_leibniz(const SampleSpec& spec, double s, double r, double rho,
                                double kappa) {
    // spec.count is the number of triples; the draw index space is 3x wider
    // (the sampler keys fields by (seed, index) only, so widening count does
    // not perturb the draws themselves).
    SampleSpec draw = spec;
    draw.count = 3 * spec.count;
    std::vector<double> ratios;
    ratios.reserve(spec.count);
    for (int i = 0; i < spec.count; ++i) {
        const Field u1 = sampling::random_band_field(draw, 3 * i);
        const Field u2 = sampling::random_band_field(draw, 3 * i + 1);
        const Field u3 = sampling::random_band_field(draw, 3 * i + 2);
        const Field pair = pair_product_conj(u2, u3);
        const double lhs = norms::sobolev_norm(triple_product(u1, u2, u3), s, rho);
        const double term1 = norms::sobolev_norm(u1, s, r) * norms::lp_norm(pair, kappa);
        const double term2 = norms::lp_norm(u1, 2.0 * kappa) * norms::sobolev_norm(pair, s, 2.0);
        const double rhs = term1 + term2;
        ratios.push_back(rhs == 0.0 ? 0.0 : lhs / rhs);
    }
    return ratios;
}

}  // namespace

Rational rationalize(double x) {
    if (!std::isfinite(x)) throw ValidationError("rationalize: value must be finite");
    const bool neg = x < 0.0;
    const double a = std::abs(x);
    // Continued-fraction convergents p_k/q_k of a.
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = a;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(frac);
        if (fl > 1e15) break;
        const long long ai = static_cast<long long>(fl);
        const long long p2 = ai * p1 + p0;
        const long long q2 = ai * q1 + q0;
        if (q2 > 10000) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        const double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - a) <= 1e-12 * std::max(1.0, a)) break;
        const double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0 ||
        std::abs(static_cast<double>(p1) / static_cast<double>(q1) - a) >
            1e-10 * std::max(1.0, a)) {
        std::ostringstream os;
        os << "rationalize: " << x << " is not recognizably rational (denominator <= 1e4)";
        throw ValidationError(os.str());
    }
    return Rational(neg ? -p1 : p1, q1);
}

InequalityReport check_decay_embedding(const SampleSpec& spec, double p, double s, double q,
                                       double r, double window) {
    spec.validate();
    if (!(window > 0.0) || !std::isfinite(window))
        throw ValidationError("check_decay_embedding: window must be positive and finite");
    require_pass(exponents::validate_decay_embedding(rationalize(p), rationalize(s),
                                                     inv_exponent(q), inv_exponent(r)),
                 "check_decay_embedding");
    const DecayRun base = run_decay(spec, p, s, q, r, window, kMeshIntervals);
    const DecayRun fine = run_decay(doubled(spec), p, s, q, r, window, 2 * kMeshIntervals);
    return finalize("decay_embedding", window, base.ratios, fine.ratios, base.pointwise);
}

InequalityReport check_homogeneous_strichartz(const SampleSpec& spec, double p, double q, double r,
                                              double window) {
    spec.validate();
    if (!(window > 0.0) || !std::isfinite(window))
        throw ValidationError("check_homogeneous_strichartz: window must be positive and finite");
    // The (2, inf, 2) endpoint sits on the boundary the strict gate excludes,
    // but it is exact mass conservation; measure it directly.
    const bool degenerate = p == 2.0 && std::isinf(q) && r == 2.0;
    if (!degenerate)
        require_pass(exponents::validate_homogeneous_strichartz(rationalize(p), inv_exponent(q),
                                                                inv_exponent(r)),
                     "check_homogeneous_strichartz");
    auto data_norm = [p](const Field& f) { return norms::lp_norm(f, p); };
    const auto base = run_flow_ratio(spec, q, r, window, kMeshIntervals, data_norm);
    const auto fine = run_flow_ratio(doubled(spec), q, r, window, 2 * kMeshIntervals, data_norm);
    return finalize(degenerate ? "homogeneous_strichartz(degenerate)" : "homogeneous_strichartz",
                    window, base, fine);
}

InequalityReport check_fefferman_stein(const SampleSpec& spec, double p, double q, double r,
                                       double window) {
    spec.validate();
    if (!(window > 0.0) || !std::isfinite(window))
        throw ValidationError("check_fefferman_stein: window must be positive and finite");
    require_pass(
        exponents::validate_fefferman_stein(rationalize(p), inv_exponent(q), inv_exponent(r)),
        "check_fefferman_stein");
    const double p_dual = p / (p - 1.0);
    auto data_norm = [p_dual](const Field& f) { return norms::spectral_lp_norm(f, p_dual); };
    const auto base = run_flow_ratio(spec, q, r, window, kMeshIntervals, data_norm);
    const auto fine = run_flow_ratio(doubled(spec), q, r, window, 2 * kMeshIntervals, data_norm);
    return finalize("fefferman_stein", window, base, fine);
}

InequalityReport check_inhomogeneous_strichartz(const SampleSpec& spec,
                                                const exponents::ExponentTuple& tuple,
                                                double window) {
    spec.validate();
    if (!(window > 0.0) || !std::isfinite(window))
        throw ValidationError("check_inhomogeneous_strichartz: window must be positive and finite");
    require_pass(exponents::validate_inhomogeneous_strichartz(tuple.inv_q, tuple.inv_r,
                                                              tuple.inv_gamma, tuple.inv_rho),
                 "check_inhomogeneous_strichartz");
    const auto base = run_inhomogeneous(spec, tuple, window, kMeshIntervals);
    const auto fine = run_inhomogeneous(doubled(spec), tuple, window, 2 * kMeshIntervals);
    return finalize("inhomogeneous_strichartz", window, base, fine);
}

InequalityReport check_duhamel_weighted(const SampleSpec& spec,
                                        const exponents::ExponentTuple& tuple, double window) {
    spec.validate();
    if (!(window > 0.0) || !std::isfinite(window))
        throw ValidationError("check_duhamel_weighted: window must be positive and finite");
    if (!tuple.inv_sigma)
        throw ValidationError("check_duhamel_weighted: tuple carries no weighted time exponent");
    // Same dual-pair hypothesis the main-tuple validation applies.
    require_pass(exponents::validate_fefferman_stein(tuple.p, Rational(1) - *tuple.inv_sigma,
                                                     Rational(1) - tuple.inv_rho),
                 "check_duhamel_weighted");
    const auto base = run_duhamel_weighted(spec, tuple, window, kMeshIntervals);
    const auto fine = run_duhamel_weighted(doubled(spec), tuple, window, 2 * kMeshIntervals);
    return finalize("duhamel_weighted", window, base, fine);
}

double trilinear_ratio(const Field& u1, const Field& u2, const Field& u3, double p, double s,
                       double T, int mesh_intervals) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw ValidationError("trilinear_ratio: T must be positive and finite");
    if (mesh_intervals < 4) throw ValidationError("trilinear_ratio: mesh_intervals must be >= 4");
    const auto tuple = exponents::main_exponents(rationalize(p), rationalize(s));
    const double q = tuple.inv_q.inv().to_double();
    const double r = tuple.inv_r.inv().to_double();
    const TimeMesh mesh = TimeMesh::uniform(T, mesh_intervals);
    std::vector<Field> f1, f2, f3, prod;
    f1.reserve(mesh.size());
    f2.reserve(mesh.size());
    f3.reserve(mesh.size());
    prod.reserve(mesh.size());
    for (int j = 0; j < mesh.size(); ++j) {
        const double t = mesh.nodes()[j];
        f1.push_back(spectral::free_propagate(u1, t));
        f2.push_back(spectral::free_propagate(u2, t));
        f3.push_back(spectral::free_propagate(u3, t));
        prod.push_back(triple_product(f1.back(), f2.back(), f3.back()));
    }
    const SpaceTimeField P(mesh, std::move(prod));
    const SpaceTimeField duh(mesh, solver::duhamel_all(P));
    const double lhs =
        norms::twisted_sup_norm(duh, s, p) + norms::mixed_norm(duh, MixedNormSpec::sobolev(q, s, r));
    const auto factor_norm = [&](std::vector<Field>& snaps) {
        return norms::mixed_norm(SpaceTimeField(mesh, std::move(snaps)),
                                 MixedNormSpec::sobolev(q, s, r));
    };
    const double rhs = factor_norm(f1) * factor_norm(f2) * factor_norm(f3);
    return rhs == 0.0 ? 0.0 : lhs / rhs;
}

TrilinearReport check_trilinear(const SampleSpec& spec, double p, double s,
                                const std::vector<double>& t_list) {
    spec.validate();
    if (t_list.size() < 2)
        throw ValidationError("check_trilinear: need at least two windows to fit a slope");
    for (double T : t_list)
        if (!(T > 0.0) || !std::isfinite(T))
            throw ValidationError("check_trilinear: windows must be positive and finite");
    const auto tuple = exponents::main_exponents(rationalize(p), rationalize(s));
    for (const auto& [label, rep] : exponents::validate_main_tuple(tuple))
        require_pass(rep, "check_trilinear(" + label + ")");

    // Band-pass base ensemble: products of three positive-band factors stay
    // at strictly positive frequencies (2 k_lo - B >= 3), where the Bessel
    // weight is within O(1/xi^2) of the exact lambda^s homogeneous scaling.
    const int B = spec.band_limit;
    const int k_lo = (B + 5) / 2;
    if (k_lo >= B)
        throw ValidationError("check_trilinear: band_limit must be >= 6 for the band-pass triples");
    if (2 * B - k_lo > spec.grid->n() / 2 - 1)
        throw ValidationError("check_trilinear: band too wide for alias-free triple products");

    const auto base = run_trilinear(spec, p, s, t_list, k_lo, kTrilinearIntervals);
    const auto fine = run_trilinear(doubled(spec), p, s, t_list, k_lo, 2 * kTrilinearIntervals);

    TrilinearReport out;
    out.report = finalize("trilinear", *std::max_element(t_list.begin(), t_list.end()),
                          base.normalized, fine.normalized);
    out.t_values = t_list;
    out.max_ratios = base.max_raw;

    // Least-squares slope of log max_ratio against log T.
    double sx = 0.0, sy = 0.0;
    const int m = static_cast<int>(t_list.size());
    for (int i = 0; i < m; ++i) {
        if (base.max_raw[i] <= 0.0)
            throw SolverError("check_trilinear: degenerate window (zero ratio), cannot fit slope");
        sx += std::log(t_list[i]);
        sy += std::log(base.max_raw[i]);
    }
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < m; ++i) {
        const double dx = std::log(t_list[i]) - sx / m;
        sxx += dx * dx;
        sxy += dx * (std::log(base.max_raw[i]) - sy / m);
    }
    if (sxx == 0.0) throw ValidationError("check_trilinear: windows must not all coincide");
    out.fitted_slope = sxy / sxx;
    return out;
}

InequalityReport check_fractional_leibniz(const SampleSpec& spec, double s, double r, double rho) {
    spec.validate();
    const Rational S = rationalize(s), R = rationalize(r), RHO = rationalize(rho);
    if (S.negative()) throw ValidationError("check_fractional_leibniz: s must be >= 0");
    if (!(R > 1) || !(RHO > 1))
        throw ValidationError("check_fractional_leibniz: r and rho must exceed 1");
    const Rational inv_kappa = RHO.inv() - R.inv();
    if (!inv_kappa.positive() || inv_kappa > 1)
        throw ValidationError(
            "check_fractional_leibniz: need 0 < 1/kappa = 1/rho - 1/r <= 1 for the product split");
    if (3 * spec.band_limit > spec.grid->n() / 2)
        throw ValidationError(
            "check_fractional_leibniz: triple products need 3*band_limit <= n/2 to stay alias-free");
    const double kappa = inv_kappa.inv().to_double();
    const auto base = run_leibniz(spec, s, r, rho, kappa);
    const auto fine = run_leibniz(doubled(spec), s, r, rho, kappa);
    return finalize("fractional_leibniz", 0.0, base, fine);
}

UniquenessReport uniqueness_experiment(const Field& phi, double p, double s, double T,
                                       const SolverConfig& cfg) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw ValidationError("uniqueness_experiment: T must be positive and finite");
    const Rational P = rationalize(p), S = rationalize(s);
    if (!(P > Rational(4, 3)) || P > 2)
        throw ValidationError("uniqueness_experiment: p must lie in (4/3, 2]");
    if (!(S > exponents::threshold_sc(P)))
        throw ValidationError("uniqueness_experiment: s must exceed the critical threshold");

    UniquenessReport rep;
    rep.p = p;
    rep.s = s;
    rep.T = T;
    exponents::ExponentTuple tuple;
    if (P <= Rational(3, 2)) {
        tuple = exponents::uniqueness_exponents_case1(P, S);  // delta = s
        rep.case_id = 1;
    } else {
        const auto c2 = exponents::uniqueness_exponents_case2(P, S);
        require_pass(c2.consistent_report, "uniqueness_experiment(case 2)");
        tuple = c2.consistent;
        rep.case_id = 2;
    }
    require_pass(exponents::validate_inhomogeneous_strichartz(tuple.inv_q, tuple.inv_r,
                                                              tuple.inv_gamma, tuple.inv_rho),
                 "uniqueness_experiment");
    const double q = tuple.inv_q.inv().to_double();
    const double r = tuple.inv_r.inv().to_double();
    rep.q = q;
    rep.r = r;

    SolverConfig base_cfg = cfg;
    base_cfg.p = p;
    base_cfg.s = s;
    base_cfg.validate();
    if (!phi.grid().same_as(*base_cfg.grid))
        throw ValidationError("uniqueness_experiment: phi does not live on cfg.grid");

    constexpr int K = 32;        // uniform comparison intervals
    constexpr int kSubSteps = 64;  // split-step steps per comparison interval
    const TimeMesh mesh = TimeMesh::uniform(T, K);

    // Picard, glued onto the comparison nodes by chaining exact sub-horizons.
    std::vector<Field> picard;
    picard.reserve(K + 1);
    picard.push_back(phi);
    for (int j = 1; j <= K; ++j) {
        const Solution piece = solver::solve_horizon(picard.back(), T / K, base_cfg);
        picard.push_back(piece.field.at(piece.field.mesh().size() - 1));
    }
    const SpaceTimeField u_picard(mesh, std::move(picard));

    // Split-step on the identical nodes (stride = steps per interval).
    const double dt = T / (K * kSubSteps);
    const SpaceTimeField ss = solver::splitstep_reference(phi, T, dt, kSubSteps);
    if (ss.mesh().size() != K + 1)
        throw SolverError("uniqueness_experiment: split-step snapshot misalignment");
    const SpaceTimeField u_split(mesh, ss.snapshots());

    // Picard at doubled spatial resolution, restricted back to the base grid.
    SolverConfig fine_cfg = base_cfg;
    fine_cfg.grid = make_grid(2 * base_cfg.grid->n(), base_cfg.grid->length());
    std::vector<Field> refined;
    refined.reserve(K + 1);
    refined.push_back(upsample2(phi));
    for (int j = 1; j <= K; ++j) {
        const Solution piece = solver::solve_horizon(refined.back(), T / K, fine_cfg);
        refined.push_back(piece.field.at(piece.field.mesh().size() - 1));
    }
    std::vector<Field> restricted;
    restricted.reserve(K + 1);
    for (const Field& f : refined) restricted.push_back(restrict2(f, phi.grid_ptr()));
    const SpaceTimeField u_refined(mesh, std::move(restricted));

    const MixedNormSpec uniq = MixedNormSpec::lebesgue(q, r);
    rep.d_picard_splitstep = norms::mixed_norm(subtract(u_picard, u_split), uniq);
    rep.d_picard_refined = norms::mixed_norm(subtract(u_picard, u_refined), uniq);
    rep.d_splitstep_refined = norms::mixed_norm(subtract(u_split, u_refined), uniq);
    rep.tw_picard_splitstep = norms::twisted_sup_norm(subtract(u_picard, u_split), s, p);
    rep.tw_picard_refined = norms::twisted_sup_norm(subtract(u_picard, u_refined), s, p);
    rep.tw_splitstep_refined = norms::twisted_sup_norm(subtract(u_split, u_refined), s, p);
    rep.eta = std::max({norms::mixed_norm(u_picard, uniq), norms::mixed_norm(u_split, uniq),
                        norms::mixed_norm(u_refined, uniq)});

    // The constant of the Duhamel -> L^gamma L^rho bound on the case tuple,
    // measured on a fixed internal forcing ensemble over the same window.
    SampleSpec c_spec;
    c_spec.seed = 0x5EEDCAFEULL;
    c_spec.count = 12;
    c_spec.band_limit = std::min(8, base_cfg.grid->n() / 3 - 1);
    c_spec.spectral_decay = 1.1;
    c_spec.grid = base_cfg.grid;
    rep.empirical_c = max_of(run_inhomogeneous(c_spec, tuple, T, kMeshIntervals));

    const double denom = 6.0 * rep.empirical_c * rep.eta * rep.eta;
    rep.t0 = denom > 0.0 ? std::pow(1.0 / denom, p / (p - 1.0)) : kInf;
    return rep;
}

}  // namespace lab

}  // namespace nls
