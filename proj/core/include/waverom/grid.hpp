#pragma once

#include <Eigen/Core>

#include "waverom/errors.hpp"

namespace waverom {

/// Uniform 1D grid on [0, domain_length] with cell_count cells and
/// cell_count + 1 nodes. Carries the trapezoid quadrature weights used by
/// every inner product in the library.
class SpatialGrid {
public:
    SpatialGrid(double domain_length, int cell_count);

    double domain_length() const { return domain_length_; }
    int cell_count() const { return cell_count_; }
    int node_count() const { return cell_count_ + 1; }
    double step() const { return step_; }

    const Eigen::VectorXd& nodes() const { return nodes_; }
    double node(int i) const { return nodes_(i); }

    /// Trapezoid weights: h at interior nodes, h/2 at the two boundary nodes.
    const Eigen::VectorXd& quadrature_weights() const { return weights_; }

    bool operator==(const SpatialGrid& other) const {
        return cell_count_ == other.cell_count_ && domain_length_ == other.domain_length_;
    }

private:
    double domain_length_;
    int cell_count_;
    double step_;
    Eigen::VectorXd nodes_;
    Eigen::VectorXd weights_;
};

/// Nonnegative potential q sampled on the grid nodes. Values are exactly
/// zero for nodes past support_end.
class Potential {
public:
    /// Zero potential on the given grid.
    static Potential zero(const SpatialGrid& grid);

    /// Gaussian bump amplitude * exp(-alpha (x - center)^2), hard-truncated
    /// to zero where the analytic value drops below 1e-16 * amplitude so the
    /// samples have compact support.
    static Potential gaussian(const SpatialGrid& grid, double amplitude, double center,
                              double alpha);

    /// Takes ownership of nodal samples; throws ConfigError on negative
    /// entries or size mismatch. support_end is derived from the samples.
    Potential(Eigen::VectorXd values, const SpatialGrid& grid);

    const Eigen::VectorXd& values() const { return values_; }
    double support_end() const { return support_end_; }
    bool is_zero() const { return support_end_ == 0.0; }
    double max_value() const { return values_.size() ? values_.maxCoeff() : 0.0; }

private:
    Eigen::VectorXd values_;
    double support_end_;
};

}  // namespace waverom
