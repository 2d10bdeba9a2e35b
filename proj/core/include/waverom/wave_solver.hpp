#pragma once

#include <optional>

#include <Eigen/Core>

#include "waverom/grid.hpp"
#include "waverom/sampling.hpp"
#include "waverom/snapshot.hpp"
#include "waverom/transfer.hpp"

namespace waverom {

/// Time-stepping configuration for the explicit second-order scheme.
struct SolverConfig {
    double dt;             ///< time step; CFL requires dt <= h at unit speed
    double tau;            ///< snapshot spacing; tau/dt must be an integer
    int snapshot_count;    ///< number of recorded snapshots (k = 0..n-1)
    bool record_boundary;  ///< record F(k tau) for k = 0..2n-2

    double courant_ratio(const SpatialGrid& grid) const { return dt / grid.step(); }

    /// dt = h/2 with snapshots and measurements matching the sampling.
    static SolverConfig paper_default(const SpatialGrid& grid, const TimeSampling& sampling);
};

/// Output of one forward solve: internal snapshots at k tau for
/// k = 0..n-1 and, when recorded, the transfer series at k tau for
/// k = 0..2n-2. energy_drift is the relative change of the conserved
/// discrete energy over the whole run.
struct ForwardResult {
    SnapshotMatrix snapshots;
    std::optional<TransferSeries> transfer;
    double energy_drift;
};

/// Explicit leapfrog solve of u_tt = u_xx - q u with homogeneous Neumann
/// boundary conditions (mirror ghost nodes), initial data u(0) = g,
/// u_t(0) = 0, startup u1 = u0 + (dt^2/2)(D2 u0 - q u0).
///
/// The Neumann closure makes the discrete operator self-adjoint under the
/// trapezoid weight, and the receiver functional reuses that same inner
/// product, so the Gramian assembled from the recorded transfer data equals
/// the Gramian of the recorded snapshots to round-off.
ForwardResult solve_fd(const Potential& q, const Eigen::VectorXd& g, const SpatialGrid& grid,
                       const SolverConfig& cfg);

/// Returns the recorded transfer series; throws ConfigError when the solve
/// did not record the boundary.
TransferSeries sample_transfer(const ForwardResult& result);

}  // namespace waverom
