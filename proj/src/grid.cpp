#include "nls/grid.hpp"

#include <cmath>
#include <string>

namespace nls {

Grid::Grid(int n_points, double length) : n_(n_points), length_(length) {
    if (n_points < 8 || (n_points & (n_points - 1)) != 0)
        throw ValidationError("grid: n_points must be a power of two >= 8, got " +
                              std::to_string(n_points));
    if (!(length > 0.0) || !std::isfinite(length))
        throw ValidationError("grid: length must be positive and finite");
    dx_ = length_ / n_;
    xi_.resize(n_);
    const double dxi = 2.0 * M_PI / length_;
    for (int k = 0; k < n_; ++k) xi_[k] = dxi * mode_of(k);
}

std::vector<double> Grid::frequencies() const {
    std::vector<double> out(n_);
    for (int k = -n_ / 2; k < n_ / 2; ++k) out[k + n_ / 2] = 2.0 * M_PI * k / length_;
    return out;
}

}  // namespace nls
