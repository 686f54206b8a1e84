#include "nls/norms.hpp"

#include <cmath>
#include <string>

namespace nls {

MixedNormSpec MixedNormSpec::lebesgue(double q, double r) {
    MixedNormSpec s;
    s.q = q;
    s.lebesgue_r = r;
    return s;
}

MixedNormSpec MixedNormSpec::sobolev(double q, double s_order, double p) {
    MixedNormSpec s;
    s.q = q;
    s.sobolev_sp = std::make_pair(s_order, p);
    return s;
}

MixedNormSpec MixedNormSpec::twisted_sup(double s_order, double p) {
    MixedNormSpec s;
    s.q = kInf;
    s.sobolev_sp = std::make_pair(s_order, p);
    s.twisted = true;
    return s;
}

namespace norms {

namespace {

void check_time_exponent(double q) {
    if (std::isnan(q) || q < 2.0)
        throw ValidationError("mixed norm: time exponent q must lie in [2, inf], got " +
                              std::to_string(q));
}

double spatial_norm(const Field& f, const MixedNormSpec& spec) {
    if (spec.lebesgue_r.has_value() == spec.sobolev_sp.has_value())
        throw ValidationError("mixed norm: exactly one spatial selector must be set");
    if (spec.lebesgue_r) return lp_norm(f, *spec.lebesgue_r);
    return sobolev_norm(f, spec.sobolev_sp->first, spec.sobolev_sp->second);
}

// (sum w_j a_j^q)^{1/q} in a mildly overflow-hardened form: factoring out
// the peak keeps a_j^q in range for the large-q exponents the scheme uses.
double weighted_power_sum(const std::vector<double>& w, const std::vector<double>& a, double q) {
    double peak = 0.0;
    for (double v : a) peak = std::max(peak, v);
    if (peak == 0.0) return 0.0;
    double acc = 0.0;
    for (size_t j = 0; j < a.size(); ++j) acc += w[j] * std::pow(a[j] / peak, q);
    return peak * std::pow(acc, 1.0 / q);
}

}  // namespace

double lp_norm(const Field& f, double r) {
    if (std::isnan(r) || r < 1.0)
        throw ValidationError("lp_norm: exponent must lie in [1, inf], got " + std::to_string(r));
    const size_t n = f.values().size();
    if (r == kInf) return kernels::max_abs(f.values().data(), n);
    const double s = kernels::sum_abs_pow(f.values().data(), r, n);
    return std::pow(f.grid().dx() * s, 1.0 / r);
}

double sobolev_norm(const Field& f, double s, double p) {
    if (std::isnan(p) || p <= 1.0 || p == kInf)
        throw ValidationError("sobolev_norm: integrability p must lie in (1, inf), got " +
                              std::to_string(p));
    if (s == 0.0) return lp_norm(f, p);
    return lp_norm(spectral::bessel_potential(f, s), p);
}

double spectral_lp_norm(const Field& f, double p) {
    if (std::isnan(p) || p < 1.0)
        throw ValidationError("spectral_lp_norm: exponent must lie in [1, inf], got " +
                              std::to_string(p));
    const Grid& g = f.grid();
    const double rescale = g.length() / std::sqrt(2.0 * M_PI);  // c_k -> hat(f)(xi_k)
    const size_t n = f.spectrum().size();
    if (p == kInf) return rescale * kernels::max_abs(f.spectrum().data(), n);
    const double dxi = 2.0 * M_PI / g.length();
    const double s = kernels::sum_abs_pow(f.spectrum().data(), p, n);
    return rescale * std::pow(dxi * s, 1.0 / p);
}

double mixed_norm(const SpaceTimeField& u, const MixedNormSpec& spec) {
    if (spec.twisted)
        throw ValidationError("mixed_norm: twisted specs go through twisted_sup_norm");
    check_time_exponent(spec.q);
    std::vector<double> per_node(u.snapshots().size());
    for (size_t j = 0; j < per_node.size(); ++j) per_node[j] = spatial_norm(u.at(j), spec);
    if (spec.q == kInf) {
        double peak = 0.0;
        for (double v : per_node) peak = std::max(peak, v);
        return peak;
    }
    return weighted_power_sum(u.mesh().weights(), per_node, spec.q);
}

double twisted_sup_norm(const SpaceTimeField& u, double s, double p) {
    double peak = 0.0;
    for (int j = 0; j < u.mesh().size(); ++j) {
        const Field back = spectral::twist(u.at(j), u.mesh().nodes()[j]);
        peak = std::max(peak, sobolev_norm(back, s, p));
    }
    return peak;
}

}  // namespace norms

}  // namespace nls
