#include <cmath>
#include <sstream>

#include "nls/errors.hpp"
#include "nls/solver.hpp"

namespace nls::solver {

// Strang splitting for i u_t + u_xx + |u|^2 u = 0. Both half-flows are
// solved exactly: the kinetic part is the free-propagator multiplier, and
// the nonlinear part i u_t + |u|^2 u = 0 preserves |u| pointwise, so it is
// the phase rotation u <- u e^{i |u|^2 dt}. Second order in dt overall.
SpaceTimeField splitstep_reference(const Field& phi, double T, double dt,
                                   int snapshot_stride) {
    if (!(T > 0.0) || !std::isfinite(T))
        throw ValidationError("splitstep_reference: T must be positive and finite");
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("splitstep_reference: dt must be positive and finite");
    const long long steps = std::llround(T / dt);
    if (steps < 1 || std::abs(static_cast<double>(steps) * dt - T) > 1e-9 * T) {
        std::ostringstream os;
        os << "splitstep_reference: dt = " << dt << " does not divide T = " << T;
        throw ValidationError(os.str());
    }
    if (snapshot_stride < 0)
        throw ValidationError("splitstep_reference: snapshot_stride must be >= 0");
    const long long stride =
        snapshot_stride > 0 ? snapshot_stride : std::max<long long>(1, (steps + 255) / 256);

    const Grid& g = phi.grid();
    const int n = g.n();
    cvector vals = phi.values();
    cvector spec(n);

    const double sup0 = kernels::max_abs(vals.data(), static_cast<std::size_t>(n));
    const double ceiling = 1e3 * std::max(sup0, 1e-300);

    std::vector<double> nodes{0.0};
    std::vector<Field> snaps{phi};

    for (long long step = 1; step <= steps; ++step) {
        spectral::forward(g, vals.data(), spec.data());
        spectral::apply_free_propagator(g, spec.data(), 0.5 * dt);
        spectral::inverse(g, spec.data(), vals.data());

        for (int j = 0; j < n; ++j) vals[j] *= std::polar(1.0, std::norm(vals[j]) * dt);

        spectral::forward(g, vals.data(), spec.data());
        spectral::apply_free_propagator(g, spec.data(), 0.5 * dt);
        spectral::inverse(g, spec.data(), vals.data());

        if (kernels::max_abs(vals.data(), static_cast<std::size_t>(n)) > ceiling)
            throw SolverError("splitstep_reference: sup|u| grew by more than 1e3, aborting");

        if (step % stride == 0 || step == steps) {
            nodes.push_back(step == steps ? T : static_cast<double>(step) * dt);
            snaps.push_back(Field::from_values(phi.grid_ptr(), vals));
        }
    }
    return SpaceTimeField(TimeMesh::from_nodes(std::move(nodes)), std::move(snaps));
}

}  // namespace nls::solver
