#pragma once
// Uniform periodic grid on [-length/2, length/2): sample points, angular
// wavenumbers, and the bookkeeping shared by every pseudospectral operator.

#include <memory>
#include <vector>

#include "nls/errors.hpp"
#include "nls/kernels.hpp"

namespace nls {

class Grid {
  public:
    // n_points must be a power of two >= 8, length positive and finite.
    Grid(int n_points, double length);

    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return dx_; }

    // j-th sample point, j in [0, n): -length/2 + j*dx
    double x(int j) const { return -0.5 * length_ + dx_ * j; }

    // wavenumbers in transform storage order: k = 0,1,...,n/2-1,-n/2,...,-1
    const dvector& xi_storage() const { return xi_; }
    double xi(int k_storage) const { return xi_[k_storage]; }

    // wavenumbers ascending: 2*pi*k/length for k = -n/2,...,n/2-1
    std::vector<double> frequencies() const;

    // integer mode index k for a storage slot (0..n/2-1, then -n/2..-1)
    int mode_of(int k_storage) const {
        return k_storage < n_ / 2 ? k_storage : k_storage - n_;
    }
    // storage slot of integer mode k in [-n/2, n/2)
    int storage_of(int mode) const { return mode >= 0 ? mode : mode + n_; }

    bool same_as(const Grid& other) const {
        return n_ == other.n_ && length_ == other.length_;
    }

  private:
    int n_;
    double length_;
    double dx_;
    dvector xi_;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(int n_points, double length) {
    return std::make_shared<const Grid>(n_points, length);
}

}  // namespace nls
