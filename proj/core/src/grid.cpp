#include "waverom/grid.hpp"

#include <cmath>

namespace waverom {

SpatialGrid::SpatialGrid(double domain_length, int cell_count)
    : domain_length_(domain_length), cell_count_(cell_count) {
    if (!(domain_length > 0.0)) {
        throw ConfigError("grid: domain_length must be positive");
    }
    if (cell_count < 2) {
        throw ConfigError("grid: cell_count must be at least 2");
    }
    step_ = domain_length_ / cell_count_;
    nodes_.resize(cell_count_ + 1);
    for (int i = 0; i <= cell_count_; ++i) {
        nodes_(i) = i * step_;
    }
    nodes_(cell_count_) = domain_length_;
    weights_ = Eigen::VectorXd::Constant(cell_count_ + 1, step_);
    weights_(0) = 0.5 * step_;
    weights_(cell_count_) = 0.5 * step_;
}

Potential Potential::zero(const SpatialGrid& grid) {
    return Potential(Eigen::VectorXd::Zero(grid.node_count()), grid);
}

Potential Potential::gaussian(const SpatialGrid& grid, double amplitude, double center,
                              double alpha) {
    if (amplitude < 0.0 || alpha <= 0.0) {
        throw ConfigError("potential: gaussian needs amplitude >= 0 and alpha > 0");
    }
    Eigen::VectorXd q(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) {
        const double d = grid.node(i) - center;
        const double v = amplitude * std::exp(-alpha * d * d);
        q(i) = (v < 1e-16 * amplitude) ? 0.0 : v;
    }
    return Potential(std::move(q), grid);
}

Potential::Potential(Eigen::VectorXd values, const SpatialGrid& grid)
    : values_(std::move(values)) {
    if (values_.size() != grid.node_count()) {
        throw ConfigError("potential: sample count does not match the grid");
    }
    support_end_ = 0.0;
    for (int i = 0; i < values_.size(); ++i) {
        if (values_(i) < 0.0) {
            throw ConfigError("potential: negative value at node " + std::to_string(i));
        }
        if (values_(i) > 0.0) {
            support_end_ = grid.node(i);
        }
    }
}

}  // namespace waverom
