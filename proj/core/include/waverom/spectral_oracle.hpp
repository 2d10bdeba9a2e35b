#pragma once

#include <vector>

#include <Eigen/Core>

#include "waverom/grid.hpp"
#include "waverom/snapshot.hpp"

namespace waverom {

/// Reference solver, exact in time for the spatially discretized system:
/// builds A = -D2 + diag(q) with the same Neumann closure as the
/// finite-difference scheme, symmetrizes it with the quadrature weights,
/// eigendecomposes, and evaluates u(t) = V cos(sqrt(lambda) t) V^T g at each
/// requested time. Differences against solve_fd on the same grid are pure
/// time-discretization error.
///
/// Dense eigendecomposition: refuses grids with more than max_cell_count
/// cells (default 20000).
SnapshotMatrix spectral_oracle(const Potential& q, const Eigen::VectorXd& g,
                               const SpatialGrid& grid, const std::vector<double>& times,
                               int max_cell_count = 20000);

}  // namespace waverom
