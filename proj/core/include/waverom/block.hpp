#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "waverom/errors.hpp"
#include "waverom/snapshot.hpp"

namespace waverom {

// Experimental MIMO path (1D, multiple sources). Snapshots are ordered first
// by time step, then by source: column k*K + j holds source j at time k tau.

/// K x K response matrices F(k tau), k = 0 .. 2n-2, with
/// F^{ji} = <g_j, u^{(i)}>. F(-m tau) enters block assembly as F(m tau)^T.
class BlockTransferSeries {
public:
    BlockTransferSeries(std::vector<Eigen::MatrixXd> values, double tau);

    int size() const { return static_cast<int>(values_.size()); }
    int source_count() const { return values_.empty() ? 0 : static_cast<int>(values_[0].rows()); }
    double tau() const { return tau_; }
    const Eigen::MatrixXd& operator()(int k) const { return values_.at(k); }

    /// Largest relative asymmetry max_k ||F_k - F_k^T|| / ||F_k||.
    double max_asymmetry() const;

private:
    std::vector<Eigen::MatrixXd> values_;
    double tau_;
};

/// n x n array of K x K blocks stored as one (nK) x (nK) matrix. The block
/// Cholesky factor is block-lower-triangular with lower-triangular
/// positive-diagonal diagonal blocks, i.e. the plain lower Cholesky factor
/// of the assembled matrix; that square-root convention is fixed here
/// because it is the one fully determined choice.
class BlockGramian {
public:
    BlockGramian(Eigen::MatrixXd entries, int n, int source_count);

    int snapshot_count() const { return n_; }
    int source_count() const { return k_; }
    int size() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXd& entries() const { return entries_; }
    Eigen::MatrixXd block(int k, int l) const;

    bool factored() const { return factor_.has_value(); }
    const Eigen::MatrixXd& factor() const;

private:
    friend const Eigen::MatrixXd& block_cholesky(BlockGramian& m);

    Eigen::MatrixXd entries_;
    int n_;
    int k_;
    std::optional<Eigen::MatrixXd> factor_;
};

/// Block mass assembly M_kl = (F((k-l) tau) + F((k+l) tau)) / 2 with
/// F(-m tau) = F(m tau)^T. Throws ConfigError when a response matrix is
/// asymmetric beyond tolerance (symmetrizes below it).
BlockGramian block_mass_from_data(const BlockTransferSeries& f, int n,
                                  double asymmetry_tolerance = 1e-8);

/// Block Gramian of interleaved multi-source snapshots.
BlockGramian block_mass_from_snapshots(const SnapshotMatrix& u, int source_count);

/// Computes (and caches) the block Cholesky factor.
const Eigen::MatrixXd& block_cholesky(BlockGramian& m);

/// Multi-source lift U0 (L0)^{-T} L^T with the block factors above.
struct BlockLiftResult {
    SnapshotMatrix lifted;
    Eigen::MatrixXd transform;
};
BlockLiftResult block_lift_internal(const SnapshotMatrix& u0, BlockGramian& m0, BlockGramian& m);

/// One forward solve per source with every receiver recorded: the full
/// K x K response series at k tau for k = 0..2n-2 and the interleaved
/// snapshots for k = 0..n-1.
struct MimoForward {
    SnapshotMatrix snapshots;
    BlockTransferSeries transfer;
};
MimoForward solve_mimo(const Potential& q, const std::vector<Eigen::VectorXd>& sources,
                       const SpatialGrid& grid, double tau, int n, double dt);

}  // namespace waverom
