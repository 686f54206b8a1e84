#pragma once
// Spatial L^p and H^s_p norms, mixed space-time norms over a quadrature
// mesh, and the twisted sup norm sup_t || e^{-it d^2/dx^2} u(t) ||_{H^s_p}
// that the contraction scheme runs in. Infinite exponents are passed as
// std::numeric_limits<double>::infinity() and realized as discrete maxima.

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "nls/spectral.hpp"

namespace nls {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

class TimeMesh {
  public:
    // Uniform mesh on [0, horizon] with n_intervals steps: composite Simpson
    // weights when n_intervals is even, trapezoid when odd.
    static TimeMesh uniform(double horizon, int n_intervals);
    // Arbitrary strictly-increasing nodes starting at 0: trapezoid weights.
    static TimeMesh from_nodes(std::vector<double> nodes);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double horizon() const { return nodes_.back(); }
    int size() const { return static_cast<int>(nodes_.size()); }
    bool is_uniform() const { return uniform_; }

  private:
    TimeMesh() = default;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    bool uniform_ = false;
};

class SpaceTimeField {
  public:
    // snapshots[j] is the field at mesh node j; all must share one grid.
    SpaceTimeField(TimeMesh mesh, std::vector<Field> snapshots);

    const TimeMesh& mesh() const { return mesh_; }
    const std::vector<Field>& snapshots() const { return snapshots_; }
    const Field& at(int j) const { return snapshots_[j]; }
    const Grid& grid() const { return snapshots_.front().grid(); }

  private:
    TimeMesh mesh_;
    std::vector<Field> snapshots_;
};

// Time exponent q in [2, inf]; exactly one of the spatial selectors set:
// lebesgue r in [1, inf], or the Bessel pair (s, p) with p in (1, inf).
// twisted = true is only meaningful at q = inf (the twisted sup norm).
struct MixedNormSpec {
    double q = kInf;
    std::optional<double> lebesgue_r;
    std::optional<std::pair<double, double>> sobolev_sp;
    bool twisted = false;

    static MixedNormSpec lebesgue(double q, double r);
    static MixedNormSpec sobolev(double q, double s, double p);
    static MixedNormSpec twisted_sup(double s, double p);
};

namespace norms {

// (dx * sum |f_j|^r)^{1/r}; max_j |f_j| at r = inf. Requires r >= 1.
double lp_norm(const Field& f, double r);

// lp_norm(bessel_potential(f, s), p) with p in (1, inf).
double sobolev_norm(const Field& f, double s, double p);

// Norm of the continuum-normalized transform samples: the coefficients c_k
// rescaled to hat(f)(xi_k) = length * c_k / sqrt(2 pi) and integrated in
// dxi = 2 pi / length. Requires p >= 1; p = inf takes the max sample.
double spectral_lp_norm(const Field& f, double p);

// Mixed space-time norm (integral of the chosen spatial norm to the q-th
// power under the mesh weights)^{1/q}; discrete max over nodes at q = inf.
// Rejects twisted specs: the twisted norm has its own entry point below.
double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec);

// sup over nodes t_j of || e^{-i t_j d^2/dx^2} u(t_j) ||_{H^s_p}.
double twisted_sup_norm(const SpaceTimeField& u, double s, double p);

}  // namespace norms

}  // namespace nls
