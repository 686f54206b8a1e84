#pragma once
// Empirical verification of the estimates behind the contraction scheme:
// dispersive decay embeddings, homogeneous / inhomogeneous / Fourier-side
// Strichartz bounds, the weighted Duhamel bound, the trilinear smallness
// power, and the fractional Leibniz product rule — each measured as a
// worst-case LHS/RHS ratio over seeded random ensembles. The headline
// unconditional-uniqueness experiment compares independent integrators in
// the uniqueness norm and evaluates the closed-form sub-interval length.
//
// Conventions shared by all checks:
//   - Whole-line time integrals are truncated to a finite window; symmetric
//     windows mean [-T_w, T_w], one-sided windows mean [0, T_w]. The window
//     is echoed in the report so constants remain comparable.
//   - Every check validates its exponents through the exact rational gates
//     before touching any samples; out-of-hypothesis input throws.
//   - Ratio convention 0/0 -> 0 (zero samples count as satisfying ratios).
//   - refinement_drift is the relative change of max_ratio when the grid
//     and the time mesh are both doubled; identical coefficient draws on
//     the finer discretization resample the same underlying function.

#include "nls/exponents.hpp"
#include "nls/solver.hpp"

namespace nls {

struct InequalityReport {
    std::string name;                     // which inequality was measured
    double window = 0.0;                  // time window the norms ran over
    std::vector<double> ratios;           // per-sample LHS/RHS values
    std::vector<double> pointwise_ratios; // per-(sample, node) envelope ratios
                                          // (decay check only, else empty)
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    double empirical_constant = 0.0;      // = max_ratio by definition
    double refinement_drift = 0.0;        // |max_2 - max_1| / max_1

    // ratios finite and nonnegative, empirical_constant == max of ratios.
    void validate() const;
};

// Trilinear check output: ratios are normalized by the predicted power
// T^(1+s-1/p), so empirical_constant estimates the window-free prefactor;
// the raw per-window maxima and the fitted log-log slope are kept alongside.
struct TrilinearReport {
    InequalityReport report;
    double fitted_slope = 0.0;
    std::vector<double> t_values;
    std::vector<double> max_ratios;       // raw max ratio per window
};

struct UniquenessReport {
    double p = 0.0, s = 0.0, T = 0.0;
    int case_id = 0;                      // 1: 4/3 < p <= 3/2, 2: 3/2 < p <= 2
    double q = 0.0, r = 0.0;              // uniqueness-norm exponents
    // Pairwise distances between the three independent solutions
    // (Picard, split-step, Picard on a doubled grid) in L^q([0,T];L^r):
    double d_picard_splitstep = 0.0;
    double d_picard_refined = 0.0;
    double d_splitstep_refined = 0.0;
    // ... and in the twisted sup norm of H^s_p:
    double tw_picard_splitstep = 0.0;
    double tw_picard_refined = 0.0;
    double tw_splitstep_refined = 0.0;
    double eta = 0.0;                     // max L^q L^r norm over the three
    double empirical_c = 0.0;             // measured Duhamel->L^gamma L^rho constant
    double t0 = 0.0;                      // (1/(6 C eta^2))^{p/(p-1)}
};

namespace lab {

// Continued-fraction rationalization of a double (denominator <= 10^4,
// relative error <= 1e-10): the bridge from floating CLI parameters to the
// exact gates. The cap is deliberately tight so irrational inputs (pi, e,
// sqrt(2), ...) are rejected instead of silently matched by a deep
// convergent. Infinite q means 1/q = 0 and is handled by the callers.
Rational rationalize(double x);

// Decay of the free flow against the |t|^(1/2-1/p) envelope over the
// symmetric window [-T_w, T_w]: pointwise ratios
//   (4 pi |t|)^(1/p-1/2) ||u(t)||_{L^r} / ||twist(u(t), t)||_{H^s_p}
// at every mesh node, and per-sample integrated ratios
//   ||u||_{L^q L^r} / sup_t ||twist||_{H^s_p}.
// Gate: s >= 1-1/p-1/r and q(1/p-1/2) < 1.
InequalityReport check_decay_embedding(const SampleSpec& spec, double p, double s, double q,
                                       double r, double window = 1.0);

// ||free flow||_{L^q L^r} over [-T_w, T_w] against ||phi||_{L^p}.
// Gate: 2/q + 1/r = 1/p, 1/q + 1/r < 1/2. The degenerate endpoint
// (p, q, r) = (2, inf, 2) bypasses the gate: it is exact mass
// conservation and is measured as such (ratio identically 1).
InequalityReport check_homogeneous_strichartz(const SampleSpec& spec, double p, double q,
                                              double r, double window = 1.0);

// Fourier-side variant: ||free flow||_{L^q L^r} against the L^{p'} norm of
// the transform of the data. Gate: 2/q + 1/r = 1/p, 0 < 1/q < min(1/2-1/r, 1/4).
InequalityReport check_fefferman_stein(const SampleSpec& spec, double p, double q, double r,
                                       double window = 1.0);

// Duhamel output of random space-time forcings F in L^q([0,T];L^r) against
// ||F||_{L^gamma([0,T];L^rho)}; the tuple is re-validated before sampling.
InequalityReport check_inhomogeneous_strichartz(const SampleSpec& spec,
                                                const exponents::ExponentTuple& tuple,
                                                double window = 1.0);

// Twisted sup H^s_p of the Duhamel output against the weighted norm
// || tau^(1/p-1/2) F ||_{L^sigma([0,T];H^s_rho)}. The weight at tau = 0
// follows 0^e = 0 for e > 0 and 1 at e = 0 (p = 2), so the origin node
// participates exactly when the weight is regular there.
// Gate: the Fourier-side hypothesis on the dual pair (sigma', rho').
InequalityReport check_duhamel_weighted(const SampleSpec& spec,
                                        const exponents::ExponentTuple& tuple,
                                        double window = 1.0);

// Trilinear smallness power: for each window T in t_list the Duhamel output
// of random triples u_1 u_2 conj(u_3) of free flows is measured in the
// iteration norm (twisted sup H^s_p + L^q H^s_r) against the product of the
// three L^q H^s_r norms, and log max_ratio is regressed on log T.
//
// The ensembles are a discretely self-similar family: window T gets the
// domain length L / lambda with lambda = sqrt(max(t_list)/T) and the same
// per-mode coefficient draws, so frequencies scale like lambda while every
// phase and spatial sum is computed from identical arithmetic. On that
// family both sides follow pure powers of lambda and the slope reproduces
// 1+s-1/p up to Bessel-vs-Riesz corrections, which the band-pass base
// ensemble (modes in [(B+5)/2, B], products then stay away from frequency
// zero) keeps below a percent. A fixed-frequency ensemble would instead
// measure the plain time-integration rate and miss the scaling power.
TrilinearReport check_trilinear(const SampleSpec& spec, double p, double s,
                                const std::vector<double>& t_list);

// One trilinear ratio: the iteration norm (twisted sup H^s_p + L^q H^s_r)
// of Duhamel(u1 u2 conj(u3)) over [0, T] against the product of the three
// L^q H^s_r norms, with (q, r) derived from (p, s); 0/0 -> 0. The building
// block of check_trilinear, exposed for closed-form spot checks.
double trilinear_ratio(const Field& u1, const Field& u2, const Field& u3, double p, double s,
                       double T, int mesh_intervals = 24);

// Product rule ||u1 u2 conj(u3)||_{H^s_rho} against
//   ||u1||_{H^s_r} ||u2 u3||_{L^kappa} + ||u1||_{L^{2 kappa}} ||u2 u3||_{H^s_2}
// with 1/kappa = 1/rho - 1/r. At s = 0 the first term alone dominates by
// Hoelder, so ratios stay <= 1 up to roundoff. Spatial-only (no time mesh).
InequalityReport check_fractional_leibniz(const SampleSpec& spec, double s, double r,
                                          double rho);

// Uniqueness at desk scale: from identical data phi, produce three
// independent numerical solutions on [0, T] (Picard glued onto a uniform
// comparison mesh, Strang split-step snapshotted onto the same mesh, and
// Picard on a grid of doubled resolution restricted back), measure all
// pairwise distances in L^q([0,T];L^r) of the case tuple and in the twisted
// sup norm, take eta as the largest L^q L^r norm among the three, measure
// the Duhamel constant C on the case tuple, and evaluate the closed-form
// sub-interval length T0 = (1/(6 C eta^2))^(p/(p-1)).
// Gate: 4/3 < p <= 2 and s above the critical threshold max(0, 2/3-1/p);
// p <= 3/2 uses the case-1 tuple with delta = s, p > 3/2 the case-2 tuple
// in its scaling-consistent closure with delta = s - (2/3 - 1/p).
UniquenessReport uniqueness_experiment(const Field& phi, double p, double s, double T,
                                       const SolverConfig& cfg);

}  // namespace lab

}  // namespace nls
