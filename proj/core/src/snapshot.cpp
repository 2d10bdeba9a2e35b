#include "waverom/snapshot.hpp"

#include <cmath>

namespace waverom {

SnapshotMatrix::SnapshotMatrix(Eigen::MatrixXd columns, SpatialGrid grid,
                               std::vector<double> times)
    : columns_(std::move(columns)), grid_(std::move(grid)), times_(std::move(times)) {
    if (columns_.rows() != grid_.node_count()) {
        throw ConfigError("snapshots: column length " + std::to_string(columns_.rows()) +
                          " does not match grid node count " +
                          std::to_string(grid_.node_count()));
    }
    if (static_cast<int>(times_.size()) != columns_.cols()) {
        throw ConfigError("snapshots: time stamp count does not match column count");
    }
}

SnapshotMatrix::SnapshotMatrix(Eigen::MatrixXd columns, SpatialGrid grid,
                               const TimeSampling& sampling)
    : SnapshotMatrix(std::move(columns), std::move(grid), [&] {
          std::vector<double> times(sampling.snapshot_count());
          for (int k = 0; k < sampling.snapshot_count(); ++k) times[k] = sampling.snapshot_time(k);
          return times;
      }()) {}

double integrate(const Eigen::VectorXd& u, const SpatialGrid& grid) {
    if (u.size() != grid.node_count()) {
        throw ConfigError("integrate: sample count does not match the grid");
    }
    return grid.quadrature_weights().dot(u);
}

double inner_product(const Eigen::VectorXd& u, const Eigen::VectorXd& v,
                     const SpatialGrid& grid) {
    if (u.size() != grid.node_count() || v.size() != grid.node_count()) {
        throw ConfigError("inner_product: grid mismatch");
    }
    return (grid.quadrature_weights().array() * u.array() * v.array()).sum();
}

double l2_norm(const Eigen::VectorXd& u, const SpatialGrid& grid) {
    return std::sqrt(std::max(0.0, inner_product(u, u, grid)));
}

double tuple_norm(const SnapshotMatrix& v) {
    const Eigen::VectorXd& w = v.grid().quadrature_weights();
    double sum = 0.0;
    for (int k = 0; k < v.snapshot_count(); ++k) {
        sum += (w.array() * v.matrix().col(k).array().square()).sum();
    }
    return std::sqrt(std::max(0.0, sum));
}

double tuple_norm_difference(const SnapshotMatrix& a, const SnapshotMatrix& b) {
    if (!(a.grid() == b.grid()) || a.snapshot_count() != b.snapshot_count()) {
        throw ConfigError("tuple_norm_difference: mismatched snapshot families");
    }
    const Eigen::VectorXd& w = a.grid().quadrature_weights();
    double sum = 0.0;
    for (int k = 0; k < a.snapshot_count(); ++k) {
        sum += (w.array() * (a.matrix().col(k) - b.matrix().col(k)).array().square()).sum();
    }
    return std::sqrt(std::max(0.0, sum));
}

Eigen::MatrixXd cross_gramian(const SnapshotMatrix& a, const SnapshotMatrix& b) {
    if (!(a.grid() == b.grid())) {
        throw ConfigError("cross_gramian: grid mismatch");
    }
    // (W a)^T b in one product; the weighted copy keeps the loop in BLAS.
    Eigen::MatrixXd wa = a.grid().quadrature_weights().asDiagonal() * a.matrix();
    return wa.transpose() * b.matrix();
}

SnapshotMatrix combine(const SnapshotMatrix& a, const Eigen::MatrixXd& coefficients) {
    if (coefficients.rows() != a.snapshot_count()) {
        throw ConfigError("combine: coefficient rows do not match snapshot count");
    }
    std::vector<double> times = a.times();
    times.resize(coefficients.cols(), times.empty() ? 0.0 : times.back());
    return SnapshotMatrix(a.matrix() * coefficients, a.grid(), std::move(times));
}

}  // namespace waverom
