#include "waverom/lift.hpp"

#include "waverom/errors.hpp"

namespace waverom {

LiftResult lift_internal(const SnapshotMatrix& u0, GramianMatrix& m0, GramianMatrix& m) {
    const int n = u0.snapshot_count();
    if (m0.size() != n || m.size() != n) {
        throw ConfigError("lift_internal: Gramian size does not match snapshot count");
    }
    const Eigen::MatrixXd& l0 = cholesky(m0);
    const Eigen::MatrixXd& l = cholesky(m);

    // T = L0^{-T} L^T by one triangular solve; upper triangular with
    // positive diagonal since both factors have positive diagonals.
    Eigen::MatrixXd t =
        l0.transpose().triangularView<Eigen::Upper>().solve(l.transpose());

    SnapshotMatrix lifted = combine(u0, t);
    return LiftResult{std::move(lifted), std::move(t), l, l0};
}

}  // namespace waverom
