#pragma once

#include <Eigen/Core>

#include "waverom/gramian.hpp"
#include "waverom/snapshot.hpp"

namespace waverom {

/// Data-generated internal fields: lifted = U0 * T with
/// T = L0^{-T} L^T upper triangular with positive diagonal, where
/// M = L L^T and M0 = L0 L0^T. The Gramian of the lifted snapshots
/// interpolates M exactly, and T is the unique upper-triangular
/// positive-diagonal transform with that property.
struct LiftResult {
    SnapshotMatrix lifted;
    Eigen::MatrixXd transform;        ///< T, upper triangular
    Eigen::MatrixXd chol_true;        ///< L
    Eigen::MatrixXd chol_background;  ///< L0
};

/// Lifts the background snapshots through the Cholesky factors of the
/// background and data Gramians. Factors the Gramians if needed (factors are
/// cached on the arguments); triangular systems are solved by substitution,
/// never by explicit inversion. Throws NotPositiveDefiniteError from the
/// factorizations and ConfigError on dimension mismatch.
LiftResult lift_internal(const SnapshotMatrix& u0, GramianMatrix& m0, GramianMatrix& m);

}  // namespace waverom
