#include "waverom/projection.hpp"

#include <cmath>

#include "waverom/errors.hpp"

namespace waverom {

namespace {

void require_matched(const SnapshotMatrix& u, const SnapshotMatrix& u0) {
    if (!(u.grid() == u0.grid()) || u.snapshot_count() != u0.snapshot_count()) {
        throw ConfigError("projection: snapshot families must share grid and count");
    }
}

// Coefficients through leading blocks of the background Cholesky factor:
// column i solves M0[0..i, 0..i] c = <u0_j, u_i>, j = 0..i.
Eigen::MatrixXd causal_coefficients_factor(const Eigen::MatrixXd& b, const Eigen::MatrixXd& l0) {
    const int n = static_cast<int>(b.cols());
    Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        const auto block = l0.topLeftCorner(i + 1, i + 1);
        Eigen::VectorXd y = block.triangularView<Eigen::Lower>().solve(b.col(i).head(i + 1));
        coeff.col(i).head(i + 1) =
            block.transpose().triangularView<Eigen::Upper>().solve(y);
    }
    return coeff;
}

// Sequential modified Gram-Schmidt on the background columns as grid
// functions; g accumulates the (upper-triangular) change of basis E = U0 g.
Eigen::MatrixXd causal_coefficients_gram_schmidt(const SnapshotMatrix& u,
                                                 const SnapshotMatrix& u0) {
    const int n = u0.snapshot_count();
    const SpatialGrid& grid = u0.grid();
    Eigen::MatrixXd basis = u0.matrix();
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < n; ++j) {
        for (int m = 0; m < j; ++m) {
            const double overlap = inner_product(basis.col(m), basis.col(j), grid);
            basis.col(j) -= overlap * basis.col(m);
            g.col(j) -= overlap * g.col(m);
        }
        const double norm = l2_norm(basis.col(j), grid);
        if (!(norm > 0.0)) {
            throw NotPositiveDefiniteError(j, norm);
        }
        basis.col(j) /= norm;
        g.col(j) /= norm;
    }
    Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double d = inner_product(basis.col(j), u.matrix().col(i), grid);
            coeff.col(i) += d * g.col(j);
        }
    }
    return coeff;
}

}  // namespace

ProjectionResult causal_projection(const SnapshotMatrix& u, const SnapshotMatrix& u0,
                                   GramianMatrix& m0, ProjectionMethod method) {
    require_matched(u, u0);
    Eigen::MatrixXd coeff;
    if (method == ProjectionMethod::CholeskyFactor) {
        const Eigen::MatrixXd b = cross_gramian(u0, u);
        coeff = causal_coefficients_factor(b, cholesky(m0));
    } else {
        coeff = causal_coefficients_gram_schmidt(u, u0);
    }
    SnapshotMatrix projected = combine(u0, coeff);
    return ProjectionResult{std::move(projected), std::move(coeff), ProjectionKind::Causal};
}

ProjectionResult full_projection(const SnapshotMatrix& u, const SnapshotMatrix& u0,
                                 GramianMatrix& m0) {
    require_matched(u, u0);
    const Eigen::MatrixXd& l0 = cholesky(m0);
    const Eigen::MatrixXd b = cross_gramian(u0, u);
    Eigen::MatrixXd coeff = l0.triangularView<Eigen::Lower>().solve(b);
    coeff = l0.transpose().triangularView<Eigen::Upper>().solve(coeff);
    SnapshotMatrix projected = combine(u0, coeff);
    return ProjectionResult{std::move(projected), std::move(coeff), ProjectionKind::Full};
}

Eigen::MatrixXd residual_matrix(const SnapshotMatrix& u, const ProjectionResult& uhat) {
    if (uhat.kind != ProjectionKind::Causal) {
        throw ConfigError("residual_matrix: expects the causal projection");
    }
    const SnapshotMatrix& p = uhat.projected;
    if (!(u.grid() == p.grid()) || u.snapshot_count() != p.snapshot_count()) {
        throw ConfigError("residual_matrix: mismatched snapshot families");
    }
    const int n = u.snapshot_count();
    SnapshotMatrix defect(u.matrix() - p.matrix(), u.grid(), u.times());
    const Eigen::MatrixXd g = cross_gramian(defect, p);  // g_ij = <u_i - p_i, p_j>
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i < j) {
                r(i, j) = g(i, j);
            } else if (i > j) {
                r(i, j) = g(j, i);
            }
        }
    }
    return r;
}

}  // namespace waverom
