#pragma once

#include <Eigen/Core>

#include "waverom/gramian.hpp"
#include "waverom/snapshot.hpp"

namespace waverom {

enum class ProjectionKind { Causal, Full };

/// How the normal equations are solved. The factor route reuses the leading
/// blocks of the Cholesky factor of M0; Gram-Schmidt orthonormalizes the
/// background columns as grid functions. Both give the same projection.
enum class ProjectionMethod { CholeskyFactor, GramSchmidt };

/// L2 projections of snapshots onto the background span.
/// Causal kind: column i uses background columns 0..i only, so the
/// coefficient matrix is upper triangular.
struct ProjectionResult {
    SnapshotMatrix projected;
    Eigen::MatrixXd coefficients;
    ProjectionKind kind;
};

/// Projects each u_i onto span{u0_0, ..., u0_i} (normal equations through
/// leading blocks of the background factor, or sequential Gram-Schmidt).
ProjectionResult causal_projection(const SnapshotMatrix& u, const SnapshotMatrix& u0,
                                   GramianMatrix& m0,
                                   ProjectionMethod method = ProjectionMethod::CholeskyFactor);

/// Projects each u_i onto the full background span.
ProjectionResult full_projection(const SnapshotMatrix& u, const SnapshotMatrix& u0,
                                 GramianMatrix& m0);

/// The residual coupling matrix of the causal projection:
/// R_ij = <u_i - p_i, p_j> for i < j, <p_i, u_j - p_j> for i > j, zero on
/// the diagonal (p = projected columns).
Eigen::MatrixXd residual_matrix(const SnapshotMatrix& u, const ProjectionResult& uhat);

}  // namespace waverom
