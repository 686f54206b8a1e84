#include <cmath>
#include <string>

#include "nls/norms.hpp"

namespace nls {

TimeMesh TimeMesh::uniform(double horizon, int n_intervals) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw ValidationError("time mesh: horizon must be positive and finite");
    if (n_intervals < 1)
        throw ValidationError("time mesh: need at least one interval, got " +
                              std::to_string(n_intervals));
    TimeMesh m;
    m.uniform_ = true;
    const double h = horizon / n_intervals;
    m.nodes_.resize(n_intervals + 1);
    for (int j = 0; j <= n_intervals; ++j) m.nodes_[j] = h * j;
    m.nodes_.back() = horizon;  // exact endpoint regardless of rounding
    m.weights_.assign(n_intervals + 1, 0.0);
    if (n_intervals % 2 == 0) {
        // composite Simpson: h/3 * [1 4 2 4 ... 2 4 1]
        const double c = h / 3.0;
        m.weights_.front() = c;
        m.weights_.back() = c;
        for (int j = 1; j < n_intervals; ++j) m.weights_[j] = c * (j % 2 ? 4.0 : 2.0);
    } else {
        m.weights_.front() = 0.5 * h;
        m.weights_.back() = 0.5 * h;
        for (int j = 1; j < n_intervals; ++j) m.weights_[j] = h;
    }
    return m;
}

TimeMesh TimeMesh::from_nodes(std::vector<double> nodes) {
    if (nodes.size() < 2) throw ValidationError("time mesh: need at least two nodes");
    if (nodes.front() != 0.0) throw ValidationError("time mesh: first node must be 0");
    for (size_t j = 0; j + 1 < nodes.size(); ++j)
        if (!(nodes[j] < nodes[j + 1]) || !std::isfinite(nodes[j + 1]))
            throw ValidationError("time mesh: nodes must be finite and strictly increasing");
    TimeMesh m;
    m.nodes_ = std::move(nodes);
    const size_t count = m.nodes_.size();
    m.weights_.assign(count, 0.0);
    for (size_t j = 0; j + 1 < count; ++j) {
        const double h = m.nodes_[j + 1] - m.nodes_[j];
        m.weights_[j] += 0.5 * h;
        m.weights_[j + 1] += 0.5 * h;
    }
    return m;
}

SpaceTimeField::SpaceTimeField(TimeMesh mesh, std::vector<Field> snapshots)
    : mesh_(std::move(mesh)), snapshots_(std::move(snapshots)) {
    if (snapshots_.size() != static_cast<size_t>(mesh_.size()))
        throw ValidationError("space-time field: " + std::to_string(snapshots_.size()) +
                              " snapshots for " + std::to_string(mesh_.size()) + " mesh nodes");
    for (const Field& f : snapshots_)
        if (!f.grid().same_as(snapshots_.front().grid()))
            throw ValidationError("space-time field: snapshots live on different grids");
}

}  // namespace nls
