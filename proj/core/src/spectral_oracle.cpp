#include "waverom/spectral_oracle.hpp"

#include <cassert>
#include <cmath>

#include <Eigen/Dense>

#include "waverom/errors.hpp"

namespace waverom {

SnapshotMatrix spectral_oracle(const Potential& q, const Eigen::VectorXd& g,
                               const SpatialGrid& grid, const std::vector<double>& times,
                               int max_cell_count) {
    const int nodes = grid.node_count();
    if (g.size() != nodes) {
        throw ConfigError("spectral_oracle: initial data does not match the grid");
    }
    if (grid.cell_count() > max_cell_count) {
        throw ConfigError("spectral_oracle: grid too large for a dense eigensolve (" +
                          std::to_string(grid.cell_count()) + " cells, limit " +
                          std::to_string(max_cell_count) + ")");
    }

    const double inv_h2 = 1.0 / (grid.step() * grid.step());
    const Eigen::VectorXd sqrt_w = grid.quadrature_weights().array().sqrt();

    // A~ = W^{1/2} A W^{-1/2}: the similarity transform of -D2 + diag(q)
    // that is symmetric because A is self-adjoint under the trapezoid weight.
    Eigen::MatrixXd sym = Eigen::MatrixXd::Zero(nodes, nodes);
    for (int i = 0; i < nodes; ++i) {
        sym(i, i) = 2.0 * inv_h2 + q.values()(i);
    }
    const double edge = -std::sqrt(2.0) * inv_h2;
    sym(0, 1) = sym(1, 0) = edge;
    sym(nodes - 1, nodes - 2) = sym(nodes - 2, nodes - 1) = edge;
    for (int i = 1; i < nodes - 2; ++i) {
        sym(i, i + 1) = sym(i + 1, i) = -inv_h2;
    }
    assert(sym.isApprox(sym.transpose()));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    if (eig.info() != Eigen::Success) {
        throw Error("spectral_oracle: eigendecomposition failed");
    }
    const Eigen::MatrixXd& v = eig.eigenvectors();
    const Eigen::VectorXd omega =
        eig.eigenvalues().array().max(0.0).sqrt();  // clamp -0 round-off

    const Eigen::VectorXd coeff = v.transpose() * (sqrt_w.array() * g.array()).matrix();

    Eigen::MatrixXd snapshots(nodes, static_cast<int>(times.size()));
    for (size_t j = 0; j < times.size(); ++j) {
        const Eigen::VectorXd modal = (omega.array() * times[j]).cos() * coeff.array();
        snapshots.col(static_cast<int>(j)) = ((v * modal).array() / sqrt_w.array()).matrix();
    }
    return SnapshotMatrix(std::move(snapshots), grid, times);
}

}  // namespace waverom
