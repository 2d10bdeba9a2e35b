#pragma once

#include <vector>

#include <Eigen/Core>

#include "waverom/grid.hpp"
#include "waverom/sampling.hpp"

namespace waverom {

/// An ordered family of grid functions (the columns), each sampled on the
/// nodes of one grid, tagged with the time each column was taken at.
class SnapshotMatrix {
public:
    SnapshotMatrix(Eigen::MatrixXd columns, SpatialGrid grid, std::vector<double> times);

    /// Columns at t = k tau for k = 0..n-1.
    SnapshotMatrix(Eigen::MatrixXd columns, SpatialGrid grid, const TimeSampling& sampling);

    int snapshot_count() const { return static_cast<int>(columns_.cols()); }
    const SpatialGrid& grid() const { return grid_; }
    const std::vector<double>& times() const { return times_; }

    const Eigen::MatrixXd& matrix() const { return columns_; }
    Eigen::MatrixXd& matrix() { return columns_; }
    Eigen::VectorXd column(int k) const { return columns_.col(k); }

private:
    Eigen::MatrixXd columns_;
    SpatialGrid grid_;
    std::vector<double> times_;
};

/// Trapezoid-rule approximation of the integral of u over the domain.
double integrate(const Eigen::VectorXd& u, const SpatialGrid& grid);

/// Trapezoid-rule approximation of the L2 inner product of u and v.
/// Throws ConfigError if the sizes do not match the grid.
double inner_product(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const SpatialGrid& grid);

/// L2 norm induced by inner_product.
double l2_norm(const Eigen::VectorXd& u, const SpatialGrid& grid);

/// Norm on families of grid functions: (sum_i ||v_i||_2^2)^(1/2).
double tuple_norm(const SnapshotMatrix& v);

/// tuple_norm of the column-wise difference a - b (matching grids and n).
double tuple_norm_difference(const SnapshotMatrix& a, const SnapshotMatrix& b);

/// Gramian of the columns of a against the columns of b: G_ij = <a_i, b_j>.
/// Evaluated as one weighted matrix product.
Eigen::MatrixXd cross_gramian(const SnapshotMatrix& a, const SnapshotMatrix& b);

/// Linear combinations of snapshot columns: returns a * coefficients, with
/// the same grid and the times of a.
SnapshotMatrix combine(const SnapshotMatrix& a, const Eigen::MatrixXd& coefficients);

}  // namespace waverom
