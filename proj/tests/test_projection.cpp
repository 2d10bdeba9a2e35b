#include <doctest.h>

#include <cmath>

#include "waverom/projection.hpp"
#include "waverom/pulse.hpp"
#include "waverom/wave_solver.hpp"

using namespace waverom;

namespace {

struct ProjectionSetup {
    SpatialGrid grid;
    PulseFamily family;
    TimeSampling sampling;
    SnapshotMatrix truth;
    SnapshotMatrix u0;
    GramianMatrix m0;
};

ProjectionSetup make_setup(PulseKind kind) {
    SpatialGrid grid(12.0, 1200);
    const double tau = 0.5;
    const int n = 8;
    PulseFamily family{kind, tau};
    TimeSampling sampling = TimeSampling::for_family(kind, tau, n);
    Eigen::VectorXd g = evaluate_pulse(family, grid);
    Potential q = Potential::gaussian(grid, 0.3, 2.0, 4.0);
    SolverConfig cfg = SolverConfig::paper_default(grid, sampling);
    ForwardResult forward = solve_fd(q, g, grid, cfg);
    SnapshotMatrix u0 = background_snapshots(family, sampling, grid);
    GramianMatrix m0 = mass_from_snapshots(u0);
    return ProjectionSetup{grid,          family, sampling, std::move(forward.snapshots),
                           std::move(u0), std::move(m0)};
}

}  // namespace

TEST_CASE("projecting the basis onto itself is the identity") {
    ProjectionSetup s = make_setup(PulseKind::Hat);
    ProjectionResult p = causal_projection(s.u0, s.u0, s.m0);
    const int n = s.u0.snapshot_count();
    CHECK((p.coefficients - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(tuple_norm_difference(p.projected, s.u0) / tuple_norm(s.u0) < 1e-12);
}

TEST_CASE("causal projection is causal and orthogonal") {
    ProjectionSetup s = make_setup(PulseKind::Hat);
    ProjectionResult p = causal_projection(s.truth, s.u0, s.m0);
    const int n = s.truth.snapshot_count();

    SUBCASE("coefficients upper triangular") {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < i; ++j) CHECK(p.coefficients(i, j) == 0.0);
        }
        CHECK(p.kind == ProjectionKind::Causal);
    }
    SUBCASE("residual orthogonal to the span") {
        for (int i = 0; i < n; ++i) {
            const Eigen::VectorXd resid = s.truth.column(i) - p.projected.column(i);
            const double u_norm = l2_norm(s.truth.column(i), s.grid);
            for (int j = 0; j <= i; ++j) {
                const double overlap = inner_product(resid, s.u0.column(j), s.grid);
                const double scale = u_norm * l2_norm(s.u0.column(j), s.grid);
                CHECK(std::abs(overlap) <= 1e-8 * scale);
            }
        }
    }
}

TEST_CASE("full projection reproduces members of the span") {
    ProjectionSetup s = make_setup(PulseKind::Hat);
    const int n = s.u0.snapshot_count();
    Eigen::MatrixXd coeff = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        coeff(i, i) = 1.0 + 0.1 * i;
        if (i > 0) coeff(i - 1, i) = -0.3;
    }
    SnapshotMatrix inside = combine(s.u0, coeff);
    ProjectionResult p = full_projection(inside, s.u0, s.m0);
    CHECK(tuple_norm_difference(p.projected, inside) / tuple_norm(inside) < 1e-10);
    CHECK(p.kind == ProjectionKind::Full);
}

TEST_CASE("factor and Gram-Schmidt routes agree") {
    ProjectionSetup s = make_setup(PulseKind::Hat);
    ProjectionResult by_factor =
        causal_projection(s.truth, s.u0, s.m0, ProjectionMethod::CholeskyFactor);
    ProjectionResult by_mgs =
        causal_projection(s.truth, s.u0, s.m0, ProjectionMethod::GramSchmidt);
    CHECK(tuple_norm_difference(by_factor.projected, by_mgs.projected) /
              tuple_norm(by_factor.projected) <
          1e-10);
    CHECK((by_factor.coefficients - by_mgs.coefficients).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("hat full projection differs through the u0_{i+1} channel") {
    ProjectionSetup s = make_setup(PulseKind::Hat);

    // Fields with the continuum support structure (background plus smooth
    // scattered parts strictly behind each front); the finite-difference
    // truth smears its fronts and would bury the channel structure.
    Eigen::MatrixXd causal_truth = s.u0.matrix();
    const double tau = s.family.tau;
    for (int i = 1; i < s.u0.snapshot_count(); ++i) {
        const double width = i * tau;
        for (int node = 0; node < s.grid.node_count(); ++node) {
            const double x = s.grid.node(node);
            if (x < width) {
                const double b = std::sin(M_PI * x / width);
                causal_truth(node, i) +=
                    (0.2 / tau) * b * b * std::cos(0.4 * i + 2.0 * x / width);
            }
        }
    }
    s.truth = SnapshotMatrix(causal_truth, s.grid, s.u0.times());

    ProjectionResult causal = causal_projection(s.truth, s.u0, s.m0);
    ProjectionResult full = full_projection(s.truth, s.u0, s.m0);

    // Orthonormalized background columns from the Cholesky factor:
    // ubar = U0 L0^{-T}; note L0^{-1} is dense lower triangular, so the
    // difference P u_i - uhat_i spreads over ubar_m for all m > i with
    // geometrically decaying coefficients (L0^{-1})_{m,i+1} <r_i, u0_{i+1}>.
    const Eigen::MatrixXd& l0 = cholesky(s.m0);
    const int n = s.truth.snapshot_count();
    Eigen::MatrixXd ubar =
        l0.triangularView<Eigen::Lower>().solve(s.u0.matrix().transpose()).transpose();
    const Eigen::MatrixXd l0_inv =
        l0.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd::Identity(n, n));

    SnapshotMatrix ubar_family(ubar, s.grid, s.u0.times());
    CHECK((cross_gramian(ubar_family, ubar_family) - Eigen::MatrixXd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-10);

    for (int i = 0; i + 1 < n; ++i) {
        const Eigen::VectorXd resid = s.truth.column(i) - causal.projected.column(i);
        const double channel = inner_product(resid, s.u0.column(i + 1), s.grid);

        // Exact single-channel factorization of the leading coefficient.
        const double overlap = inner_product(s.truth.column(i), ubar.col(i + 1), s.grid);
        CHECK(overlap ==
              doctest::Approx(l0_inv(i + 1, i + 1) * channel)
                  .epsilon(1e-8)
                  .scale(l2_norm(s.truth.column(i), s.grid)));

        // The one-term form captures the difference up to the geometric
        // tail of L0^{-1} (ratio ~0.27 per step for the hat Gramian).
        const Eigen::VectorXd diff =
            full.projected.column(i) - causal.projected.column(i);
        const Eigen::VectorXd one_term = overlap * ubar.col(i + 1);
        const double diff_norm = l2_norm(diff, s.grid);
        if (diff_norm > 1e-12 * l2_norm(s.truth.column(i), s.grid)) {
            CHECK(l2_norm(diff - one_term, s.grid) <= 0.3 * diff_norm);
        }
    }
}

TEST_CASE("residual matrix structure") {
    ProjectionSetup s = make_setup(PulseKind::Hat);
    ProjectionResult causal = causal_projection(s.truth, s.u0, s.m0);
    Eigen::MatrixXd r = residual_matrix(s.truth, causal);
    const int n = s.truth.snapshot_count();

    SUBCASE("zero diagonal and symmetric by construction") {
        for (int i = 0; i < n; ++i) CHECK(r(i, i) == 0.0);
        CHECK((r - r.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    }
    SUBCASE("entries match direct quadrature") {
        const Eigen::VectorXd resid0 = s.truth.column(0) - causal.projected.column(0);
        CHECK(r(0, 3) ==
              doctest::Approx(inner_product(resid0, causal.projected.column(3), s.grid))
                  .epsilon(1e-12));
    }
    SUBCASE("projecting the basis gives a zero residual matrix") {
        ProjectionResult self = causal_projection(s.u0, s.u0, s.m0);
        Eigen::MatrixXd rz = residual_matrix(s.u0, self);
        CHECK(rz.cwiseAbs().maxCoeff() < 1e-10 * s.m0.entries().norm());
    }
    SUBCASE("full projection is rejected") {
        ProjectionResult full = full_projection(s.truth, s.u0, s.m0);
        CHECK_THROWS_AS(residual_matrix(s.truth, full), ConfigError);
    }
}

TEST_CASE("grid mismatch is rejected") {
    ProjectionSetup s = make_setup(PulseKind::Hat);
    SpatialGrid other(12.0, 600);
    SnapshotMatrix wrong(Eigen::MatrixXd::Zero(601, 8), other,
                         std::vector<double>(8, 0.0));
    CHECK_THROWS_AS(causal_projection(wrong, s.u0, s.m0), ConfigError);
}
