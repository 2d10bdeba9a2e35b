#include "waverom/block.hpp"

#include <cmath>

#include "waverom/gramian.hpp"
#include "waverom/wave_solver.hpp"

namespace waverom {

BlockTransferSeries::BlockTransferSeries(std::vector<Eigen::MatrixXd> values, double tau)
    : values_(std::move(values)), tau_(tau) {
    if (values_.empty()) {
        throw ConfigError("block transfer: empty series");
    }
    const int k = static_cast<int>(values_[0].rows());
    for (const auto& f : values_) {
        if (f.rows() != k || f.cols() != k) {
            throw ConfigError("block transfer: response matrices must all be K x K");
        }
    }
}

double BlockTransferSeries::max_asymmetry() const {
    double scale = 0.0;
    for (const auto& f : values_) scale = std::max(scale, f.norm());
    scale = std::max(scale, 1e-300);
    double worst = 0.0;
    for (const auto& f : values_) {
        worst = std::max(worst, (f - f.transpose()).norm() / scale);
    }
    return worst;
}

BlockGramian::BlockGramian(Eigen::MatrixXd entries, int n, int source_count)
    : entries_(std::move(entries)), n_(n), k_(source_count) {
    if (entries_.rows() != entries_.cols() ||
        entries_.rows() != static_cast<long>(n_) * k_) {
        throw ConfigError("block gramian: entries must be (nK) x (nK)");
    }
    entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

Eigen::MatrixXd BlockGramian::block(int k, int l) const {
    return entries_.block(k * k_, l * k_, k_, k_);
}

const Eigen::MatrixXd& BlockGramian::factor() const {
    if (!factor_.has_value()) {
        throw ConfigError("block gramian: factor requested before factorization");
    }
    return *factor_;
}

BlockGramian block_mass_from_data(const BlockTransferSeries& f, int n,
                                  double asymmetry_tolerance) {
    if (f.size() < 2 * n - 1) {
        throw ConfigError("block_mass_from_data: need " + std::to_string(2 * n - 1) +
                          " response matrices, got " + std::to_string(f.size()));
    }
    if (f.max_asymmetry() > asymmetry_tolerance) {
        throw ConfigError("block_mass_from_data: response matrix asymmetric beyond tolerance (" +
                          std::to_string(f.max_asymmetry()) + ")");
    }
    const int k_sources = f.source_count();
    // F(-m tau) = F(m tau)^T; each F is symmetrized before use.
    auto sym = [&](int m) { return (0.5 * (f(m) + f(m).transpose())).eval(); };

    Eigen::MatrixXd entries(n * k_sources, n * k_sources);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            entries.block(k * k_sources, l * k_sources, k_sources, k_sources) =
                0.5 * (sym(std::abs(k - l)) + sym(k + l));
        }
    }
    return BlockGramian(std::move(entries), n, k_sources);
}

BlockGramian block_mass_from_snapshots(const SnapshotMatrix& u, int source_count) {
    if (u.snapshot_count() % source_count != 0) {
        throw ConfigError("block_mass_from_snapshots: column count not divisible by K");
    }
    return BlockGramian(cross_gramian(u, u), u.snapshot_count() / source_count, source_count);
}

const Eigen::MatrixXd& block_cholesky(BlockGramian& m) {
    if (!m.factor_.has_value()) {
        // Lower-triangular diagonal blocks with positive diagonal: the block
        // factor coincides with the scalar Cholesky factor of the assembled
        // matrix.
        m.factor_ = cholesky_lower(m.entries_);
    }
    return *m.factor_;
}

BlockLiftResult block_lift_internal(const SnapshotMatrix& u0, BlockGramian& m0,
                                     BlockGramian& m) {
    if (u0.snapshot_count() != m0.size() || m0.size() != m.size()) {
        throw ConfigError("block_lift_internal: dimension mismatch");
    }
    const Eigen::MatrixXd& l0 = block_cholesky(m0);
    const Eigen::MatrixXd& l = block_cholesky(m);
    Eigen::MatrixXd t = l0.transpose().triangularView<Eigen::Upper>().solve(l.transpose());
    SnapshotMatrix lifted = combine(u0, t);
    return BlockLiftResult{std::move(lifted), std::move(t)};
}

MimoForward solve_mimo(const Potential& q, const std::vector<Eigen::VectorXd>& sources,
                       const SpatialGrid& grid, double tau, int n, double dt) {
    const int k_sources = static_cast<int>(sources.size());
    if (k_sources < 1) {
        throw ConfigError("solve_mimo: need at least one source");
    }
    SolverConfig cfg;
    cfg.dt = dt;
    cfg.tau = tau;
    cfg.snapshot_count = 2 * n - 1;  // receiver samples live on snapshot times
    cfg.record_boundary = false;

    Eigen::MatrixXd interleaved(grid.node_count(), n * k_sources);
    std::vector<Eigen::MatrixXd> responses(2 * n - 1,
                                           Eigen::MatrixXd::Zero(k_sources, k_sources));
    for (int i = 0; i < k_sources; ++i) {
        ForwardResult forward = solve_fd(q, sources[i], grid, cfg);
        for (int k = 0; k < n; ++k) {
            interleaved.col(k * k_sources + i) = forward.snapshots.matrix().col(k);
        }
        for (int k = 0; k < 2 * n - 1; ++k) {
            for (int j = 0; j < k_sources; ++j) {
                responses[k](j, i) =
                    inner_product(sources[j], forward.snapshots.matrix().col(k), grid);
            }
        }
    }
    std::vector<double> times(n * k_sources);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < k_sources; ++i) times[k * k_sources + i] = k * tau;
    }
    return MimoForward{SnapshotMatrix(std::move(interleaved), grid, std::move(times)),
                       BlockTransferSeries(std::move(responses), tau)};
}

}  // namespace waverom
