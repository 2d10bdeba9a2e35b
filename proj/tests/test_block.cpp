#include <doctest.h>

#include <cmath>

#include "waverom/block.hpp"
#include "waverom/gramian.hpp"
#include "waverom/pulse.hpp"

using namespace waverom;

namespace {

struct MimoSetup {
    SpatialGrid grid;
    double tau;
    int n;
    std::vector<Eigen::VectorXd> sources;
    Potential q;
};

MimoSetup make_mimo(double q_amp) {
    SpatialGrid grid(12.0, 1200);
    const double tau = 0.5;
    const int n = 6;  // receiver samples reach (2n-2) tau = 5 < 12
    std::vector<Eigen::VectorXd> sources;
    sources.push_back(evaluate_pulse({PulseKind::Hat, tau}, grid));
    Eigen::VectorXd g2 = Eigen::VectorXd::Zero(grid.node_count());
    for (int i = 0; i < grid.node_count(); ++i) {
        const double d = std::abs(grid.node(i) - 2.0);
        if (d < tau) g2(i) = 2.0 * (1.0 - d / tau) / tau;
    }
    sources.push_back(std::move(g2));
    Potential q = q_amp > 0.0 ? Potential::gaussian(grid, q_amp, 4.0, 4.0)
                              : Potential::zero(grid);
    return MimoSetup{grid, tau, n, std::move(sources), std::move(q)};
}

}  // namespace

TEST_CASE("block transfer series shape and symmetry") {
    MimoSetup s = make_mimo(0.1);
    MimoForward fwd = solve_mimo(s.q, s.sources, s.grid, s.tau, s.n, 0.5 * s.grid.step());

    CHECK(fwd.transfer.size() == 2 * s.n - 1);
    CHECK(fwd.transfer.source_count() == 2);
    CHECK(fwd.snapshots.snapshot_count() == s.n * 2);
    CHECK(fwd.transfer.max_asymmetry() < 1e-10);

    // F(0) is the source Gram matrix.
    CHECK(fwd.transfer(0)(0, 1) ==
          doctest::Approx(inner_product(s.sources[0], s.sources[1], s.grid)).epsilon(1e-12));
}

TEST_CASE("asymmetric response matrices are rejected") {
    std::vector<Eigen::MatrixXd> series(3, Eigen::MatrixXd::Identity(2, 2));
    series[1](0, 1) = 0.5;  // not symmetric
    BlockTransferSeries bad(series, 0.5);
    CHECK_THROWS_AS(block_mass_from_data(bad, 2), ConfigError);
}

TEST_CASE("block assembly matches the scalar path for K = 1") {
    MimoSetup s = make_mimo(0.1);
    std::vector<Eigen::VectorXd> single(1, s.sources[0]);
    MimoForward fwd = solve_mimo(s.q, single, s.grid, s.tau, s.n, 0.5 * s.grid.step());

    std::vector<double> flat(2 * s.n - 1);
    for (int k = 0; k < 2 * s.n - 1; ++k) flat[k] = fwd.transfer(k)(0, 0);
    GramianMatrix scalar = mass_from_data(TransferSeries(flat, s.tau), s.n);
    BlockGramian blocked = block_mass_from_data(fwd.transfer, s.n);

    CHECK((blocked.entries() - scalar.entries()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("block Gramian structure and factorization") {
    MimoSetup s = make_mimo(0.1);
    MimoForward fwd = solve_mimo(s.q, s.sources, s.grid, s.tau, s.n, 0.5 * s.grid.step());
    BlockGramian m = block_mass_from_data(fwd.transfer, s.n);

    SUBCASE("blocks transpose across the diagonal") {
        for (int k = 0; k < s.n; ++k) {
            for (int l = 0; l < s.n; ++l) {
                CHECK((m.block(k, l) - m.block(l, k).transpose()).cwiseAbs().maxCoeff() <
                      1e-12);
            }
        }
    }
    SUBCASE("factor reproduces the matrix and is block-lower-triangular") {
        const Eigen::MatrixXd& l = block_cholesky(m);
        CHECK((l * l.transpose() - m.entries()).norm() / m.entries().norm() < 1e-10);
        for (int i = 0; i < m.size(); ++i) {
            CHECK(l(i, i) > 0.0);
            for (int j = i + 1; j < m.size(); ++j) CHECK(l(i, j) == 0.0);
        }
    }
}

TEST_CASE("block lift: interpolation identity and q = 0 collapse") {
    MimoSetup s = make_mimo(0.1);
    const double dt = 0.5 * s.grid.step();
    MimoForward fwd = solve_mimo(s.q, s.sources, s.grid, s.tau, s.n, dt);
    MimoForward bg = solve_mimo(Potential::zero(s.grid), s.sources, s.grid, s.tau, s.n, dt);

    BlockGramian m = block_mass_from_data(fwd.transfer, s.n);
    BlockGramian m0 = block_mass_from_snapshots(bg.snapshots, 2);
    BlockLiftResult lift = block_lift_internal(bg.snapshots, m0, m);

    SUBCASE("lifted Gramian interpolates the data Gramian") {
        BlockGramian interpolated = block_mass_from_snapshots(lift.lifted, 2);
        const double rel = (interpolated.entries() - m.entries()).norm() / m.entries().norm();
        CHECK(rel < 1e-8);
    }
    SUBCASE("q = 0 collapse") {
        BlockGramian zm = block_mass_from_data(bg.transfer, s.n);
        BlockGramian zm0 = block_mass_from_snapshots(bg.snapshots, 2);
        BlockLiftResult zlift = block_lift_internal(bg.snapshots, zm0, zm);
        const double rel =
            tuple_norm_difference(zlift.lifted, bg.snapshots) / tuple_norm(bg.snapshots);
        CHECK(rel < 1e-8);
    }
}
