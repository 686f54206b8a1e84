#pragma once
// Local-in-time solution of i u_t + u_xx + |u|^2 u = 0 by Picard iteration
// on the Duhamel map S(u) = e^{it d^2/dx^2} phi + i int_0^t e^{i(t-tau) d^2/dx^2}
// (|u|^2 u) dtau, run globally over a time mesh (not time-marched): adaptive
// local-time selection enforces a measured contraction factor, and intervals
// are glued to reach longer horizons. A Strang split-step integrator serves
// as the independent reference.

#include <optional>

#include "nls/sampling.hpp"

namespace nls {

struct SolverConfig {
    double p = 2.0;
    double s = 0.25;
    GridPtr grid;
    int time_nodes_per_interval = 17;  // mesh nodes per local interval, >= 9
    int quadrature_order = 3;          // Gauss points per mesh cell, 1..8
    double tol = 1e-10;                // metric distance at acceptance
    int max_iter = 30;
    double contraction_target = 0.75;  // measured-ratio ceiling for T selection
    bool dealias = true;               // 2/3-rule truncation of the cubic term
    double t_max = 1.0;                // cap on the local interval length

    // Checks invariants and that (p, s) lies in the admissible box
    // 4/3 < p <= 2, 0 < s < 3/2 - 2/p.
    void validate() const;

    // Exponents of the iteration metric d(u,v) = ||u-v||_{twisted sup H^s_p}
    // + ||u-v||_{L^q H^s_r}: 1/q = 1/(2p)-1/8-s/4, 1/r = (1+2s)/4.
    double metric_q() const { return 1.0 / (0.5 / p - 0.125 - 0.25 * s); }
    double metric_r() const { return 4.0 / (1.0 + 2.0 * s); }
};

struct IterationTrace {
    std::vector<double> distances;  // d_k = d(u_{k+1}, u_k)
    std::vector<double> ratios;     // d_k / d_{k-1}, k >= 1
    double chosen_T = 0.0;
    double ball_radius = 0.0;       // R = 2 C_emp ||phi||_{H^s_p}
    int halvings = 0;
    int intervals = 1;              // > 1 for glued solutions
};

struct Solution {
    SpaceTimeField field;
    IterationTrace trace;
    double residual = 0.0;               // d(u, Su) on acceptance
    std::optional<double> eta;           // uniqueness experiment's eta_T
};

namespace solver {

// d(u, v) in the iteration metric of the configured (p, s).
double metric_distance(const SpaceTimeField& u, const SpaceTimeField& v,
                       const SolverConfig& cfg);

// Empirical stability constant for (p, s, grid, mesh) — the larger of the
// measured trilinear Duhamel constant and a homogeneous-flow floor; cached
// per configuration. Deterministic (seeded probes).
double empirical_constant(const SolverConfig& cfg);

// Quadrature of int_0^t e^{i(t-tau) d^2/dx^2} F(tau) dtau: composite
// Gauss-Legendre in tau with F interpolated coefficient-wise by local
// 6-point Lagrange stencils. t must be a node of F's mesh.
Field duhamel(const SpaceTimeField& F, double t, int quadrature_order = 3);

// Batch form of duhamel: the integrals at every mesh node in one pass over
// the shared accumulator (the single-t form above rebuilds it per call).
std::vector<Field> duhamel_all(const SpaceTimeField& F, int quadrature_order = 3);

// One full Picard sweep: (S u)(t_j) at every node.
SpaceTimeField apply_S(const SpaceTimeField& u, const Field& phi, const SolverConfig& cfg);

struct LocalTime {
    double T = 0.0;
    double R = 0.0;
    int halvings = 0;
};

// R = 2 C_emp ||phi||_{H^s_p}; T from T^{1+s-1/p} = 1/(4 C_emp R^2) capped
// at cfg.t_max, then halved until the measured first contraction ratio is
// <= cfg.contraction_target and the projected sweep count fits max_iter.
LocalTime select_local_time(const Field& phi, const SolverConfig& cfg);

// Fixed-point solve on [0, T] with T from select_local_time.
Solution picard_solve(const Field& phi, const SolverConfig& cfg);

// Glue n_intervals local solves end to end, restarting from each terminal
// snapshot; sol is the already-computed first interval for data phi. The
// returned trace carries the final interval's iteration stats, summed
// halvings, and the total horizon in chosen_T.
Solution continue_solution(const Solution& sol, const Field& phi, int n_intervals,
                           const SolverConfig& cfg);

// Glue as many local intervals as needed to cover [0, horizon] exactly.
Solution solve_horizon(const Field& phi, double horizon, const SolverConfig& cfg);

// Strang split-step reference integrator over [0, T] with step dt (dt must
// divide T): exact kinetic multiplier and exact nonlinear phase rotation.
// Snapshots are kept every snapshot_stride steps (0 = choose automatically,
// at most ~256 snapshots); the final step is always included. Aborts via
// SolverError if sup|u| grows by more than 1e3.
SpaceTimeField splitstep_reference(const Field& phi, double T, double dt,
                                   int snapshot_stride = 0);

}  // namespace solver

}  // namespace nls
