#pragma once

#include <Eigen/Core>

#include "waverom/grid.hpp"
#include "waverom/sampling.hpp"
#include "waverom/snapshot.hpp"

namespace waverom {

/// Samples the initial pulse g on the grid nodes.
///
/// Jump convention for the step family: a discontinuity node belonging to
/// the pulse interior on one side takes the mean of the two one-sided
/// values. This makes the trapezoid integral of g exactly one.
/// Throws ConfigError when tau < 2 h (pulse under-resolved) or when tau/h is
/// not an even integer.
Eigen::VectorXd evaluate_pulse(const PulseFamily& family, const SpatialGrid& grid);

/// The q = 0 snapshots u0_k: column 0 is g itself, column k >= 1 samples
/// g(x - k tau)/2.
///
/// Step translates are sampled left-open on (k tau - tau/2, k tau + tau/2]
/// so that adjacent columns share no nonzero node; together with the mean
/// value at the boundary pulse's jump this keeps distinct step columns
/// exactly orthogonal in the trapezoid inner product.
SnapshotMatrix background_snapshots(const PulseFamily& family, const TimeSampling& sampling,
                                    const SpatialGrid& grid);

/// First and last node index of the support of background column k
/// (inclusive); used to skip zero blocks when forming combinations.
struct SupportRange {
    int first;
    int last;
};
SupportRange background_support(const PulseFamily& family, const TimeSampling& sampling,
                                const SpatialGrid& grid, int k);

}  // namespace waverom
