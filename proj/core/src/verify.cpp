#include <cmath>
#include <functional>
#include <random>

#include <Eigen/Dense>

#include "waverom/block.hpp"
#include "waverom/diagnostics.hpp"
#include "waverom/experiment.hpp"
#include "waverom/lift.hpp"
#include "waverom/projection.hpp"
#include "waverom/pulse.hpp"
#include "waverom/spectral_oracle.hpp"
#include "waverom/wave_solver.hpp"

namespace waverom {

namespace {

struct UnitRun {
    SpatialGrid grid;
    TimeSampling sampling;
    PulseFamily family;
    Eigen::VectorXd g;
    SnapshotMatrix truth;
    TransferSeries transfer;
    SnapshotMatrix u0;
};

// Small scattering setup shared by the battery: L = 12, h = 0.01, tau = 0.5,
// n = 8, Gaussian potential in the probed window.
UnitRun unit_run(PulseKind kind, bool zero_potential, BackgroundSource source) {
    SpatialGrid grid(12.0, 1200);
    const double tau = 0.5;
    const int n = 8;
    TimeSampling sampling = TimeSampling::for_family(kind, tau, n);
    PulseFamily family{kind, tau};
    Eigen::VectorXd g = evaluate_pulse(family, grid);
    Potential q = zero_potential ? Potential::zero(grid)
                                 : Potential::gaussian(grid, 0.3, 2.0, 4.0);
    SolverConfig cfg;
    cfg.dt = 0.5 * grid.step();
    cfg.tau = tau;
    cfg.snapshot_count = n;
    cfg.record_boundary = true;
    ForwardResult forward = solve_fd(q, g, grid, cfg);

    SnapshotMatrix u0 = [&]() {
        if (source == BackgroundSource::Analytic) {
            return background_snapshots(family, sampling, grid);
        }
        if (zero_potential) return forward.snapshots;
        SolverConfig bg = cfg;
        bg.record_boundary = false;
        return solve_fd(Potential::zero(grid), g, grid, bg).snapshots;
    }();
    return UnitRun{grid,  sampling, family, std::move(g), std::move(forward.snapshots),
                   *forward.transfer, std::move(u0)};
}

CheckResult run_check(const std::string& name, const std::function<CheckResult()>& body) {
    try {
        CheckResult result = body();
        result.name = name;
        return result;
    } catch (const std::exception& e) {
        CheckResult result;
        result.name = name;
        result.pass = false;
        result.detail = std::string("exception: ") + e.what();
        return result;
    }
}

CheckResult make_result(bool pass, double measured, const std::string& detail) {
    CheckResult r;
    r.pass = pass;
    r.measured = measured;
    r.detail = detail;
    return r;
}

// Snapshot family with the continuum support structure: the background
// translates plus smooth scattered parts that stay strictly behind each
// front. On these fields the residual-sparsity statements are exact at the
// discrete level (the stepper's smeared front only approaches them as
// h -> 0).
SnapshotMatrix synthetic_causal_truth(const PulseFamily& family, const TimeSampling& sampling,
                                      const SnapshotMatrix& u0, double amplitude = 0.2) {
    const SpatialGrid& grid = u0.grid();
    const double tau = family.tau;
    Eigen::MatrixXd u = u0.matrix();
    for (int i = 1; i < sampling.snapshot_count(); ++i) {
        const double width =
            family.kind == PulseKind::Step ? std::max(tau, i * tau - 0.5 * tau) : i * tau;
        const double amp = (amplitude + 0.25 * amplitude * std::sin(1.0 + i)) / tau;
        for (int node = 0; node < grid.node_count(); ++node) {
            const double x = grid.node(node);
            if (x < width) {
                const double s = std::sin(M_PI * x / width);
                u(node, i) += amp * s * s * std::cos(0.5 * i + 3.0 * x / width);
            }
        }
    }
    return SnapshotMatrix(std::move(u), grid, u0.times());
}

double relative_frobenius(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).norm() / std::max(b.norm(), 1e-300);
}

std::vector<CheckResult> common_battery() {
    std::vector<CheckResult> checks;

    UnitRun hat = unit_run(PulseKind::Hat, false, BackgroundSource::Analytic);
    GramianMatrix m0 = mass_from_snapshots(hat.u0);
    GramianMatrix m = mass_from_data(hat.transfer, hat.sampling.snapshot_count());
    LiftResult lift = lift_internal(hat.u0, m0, m);
    ProjectionResult causal = causal_projection(hat.truth, hat.u0, m0);

    checks.push_back(run_check("gramian interpolation (hat)", [&] {
        GramianMatrix interpolated = mass_from_snapshots(lift.lifted);
        const double err = relative_frobenius(interpolated.entries(), m.entries());
        return make_result(err <= 1e-8, err, "rel Frobenius., tol 1e-8");
    }));

    checks.push_back(run_check("norm identity ||U_lift|| = ||L||_F", [&] {
        const double lhs = tuple_norm(lift.lifted);
        const double rhs = lift.chol_true.norm();
        const double err = std::abs(lhs - rhs) / rhs;
        return make_result(err <= 1e-8, err, "relative, tol 1e-8");
    }));

    checks.push_back(run_check("norm identity ||U_lift - Uhat|| = ||L - Lhat||_F", [&] {
        GramianMatrix mhat = mass_from_snapshots(causal.projected);
        const Eigen::MatrixXd& lhat = cholesky(mhat);
        const double lhs = tuple_norm_difference(lift.lifted, causal.projected);
        const double rhs = (lift.chol_true - lhat).norm();
        const double err = std::abs(lhs - rhs) / std::max(rhs, 1e-300);
        return make_result(err <= 1e-8, err, "relative, tol 1e-8");
    }));

    checks.push_back(run_check("mass from data equals snapshot mass", [&] {
        GramianMatrix from_snaps = mass_from_snapshots(hat.truth);
        const double err = relative_frobenius(m.entries(), from_snaps.entries());
        return make_result(err <= 1e-3, err, "rel Frobenius, tol 1e-3");
    }));

    checks.push_back(run_check("mass gap bounded by projection error + residual", [&] {
        GramianMatrix mhat = mass_from_snapshots(causal.projected);
        const double gap = (m.entries() - mhat.entries()).norm();
        const double best = tuple_norm_difference(hat.truth, causal.projected);
        const double r_norm = residual_matrix(hat.truth, causal).norm();
        const double rhs = best * best + r_norm + 1e-8 * m.entries().norm();
        return make_result(gap <= rhs, gap / rhs, "||M-Mhat||_F vs best^2 + ||R||_F");
    }));

    checks.push_back(run_check("zero-potential collapse T = I", [&] {
        UnitRun zero = unit_run(PulseKind::Hat, true, BackgroundSource::Solved);
        GramianMatrix zm0 = mass_from_snapshots(zero.u0);
        GramianMatrix zm = mass_from_data(zero.transfer, zero.sampling.snapshot_count());
        LiftResult zlift = lift_internal(zero.u0, zm0, zm);
        const int n = zero.sampling.snapshot_count();
        const double t_err =
            (zlift.transform - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
        const double u_err =
            tuple_norm_difference(zlift.lifted, zero.u0) / tuple_norm(zero.u0);
        return make_result(t_err <= 1e-10 && u_err <= 1e-6, t_err,
                           "max |T - I|, tol 1e-10; field collapse tol 1e-6");
    }));

    checks.push_back(run_check("oracle vs stepper: observed time order", [&] {
        SpatialGrid grid(40.0, 1200);
        Potential q = Potential::gaussian(grid, 0.3, 14.0, 0.04);
        Eigen::VectorXd g(grid.node_count());
        for (int i = 0; i < grid.node_count(); ++i) {
            const double x = grid.node(i);
            g(i) = std::exp(-8.0 * (x - 4.0) * (x - 4.0));
        }
        const double t_ref = 12.0;
        SnapshotMatrix reference = spectral_oracle(q, g, grid, {0.0, t_ref});
        auto fd_error = [&](double dt) {
            SolverConfig cfg{dt, t_ref, 2, false};
            ForwardResult fr = solve_fd(q, g, grid, cfg);
            return l2_norm(fr.snapshots.matrix().col(1) - reference.matrix().col(1), grid);
        };
        const double h = grid.step();
        const double e1 = fd_error(0.5 * h);
        const double e2 = fd_error(0.25 * h);
        const double ratio = e1 / e2;
        return make_result(ratio >= 3.5 && ratio <= 4.5, ratio,
                           "error ratio under dt halving, window [3.5, 4.5]");
    }));

    UnitRun step = unit_run(PulseKind::Step, false, BackgroundSource::Analytic);
    GramianMatrix sm0 = mass_from_snapshots(step.u0);

    checks.push_back(run_check("step background Gramian diagonal", [&] {
        Eigen::MatrixXd off = sm0.entries();
        off.diagonal().setZero();
        const double scale = sm0.entries().diagonal().maxCoeff();
        const double err = off.cwiseAbs().maxCoeff() / scale;
        return make_result(err <= 1e-8, err, "max off-diagonal / max diagonal, tol 1e-8");
    }));

    checks.push_back(run_check("step residual matrix vanishes", [&] {
        SnapshotMatrix causal_truth = synthetic_causal_truth(step.family, step.sampling, step.u0);
        ProjectionResult sc = causal_projection(causal_truth, step.u0, sm0);
        const double scale = sm0.entries().diagonal().maxCoeff();
        const double err = residual_matrix(causal_truth, sc).cwiseAbs().maxCoeff() / scale;
        return make_result(err <= 1e-8, err,
                           "causal-support fields; max |R| over Gramian scale, tol 1e-8");
    }));

    checks.push_back(run_check("step kappa(M0) = 2 - h/tau", [&] {
        const double kappa = condition_number(sm0);
        const double expected = 2.0 - step.grid.step() / step.family.tau;
        const double err = std::abs(kappa - expected);
        return make_result(err <= 1e-10, kappa, "truncated first column; expected 2 - h/tau");
    }));

    checks.push_back(run_check("hat 6 tau M0 interior rows (1,4,1)", [&] {
        const double tau = hat.family.tau;
        const double h = hat.grid.step();
        const Eigen::MatrixXd scaled = 6.0 * tau * m0.entries();
        // Rows whose neighbors are all full hats; row 1 still touches the
        // boundary half-pulse column.
        double worst = 0.0;
        for (int i = 2; i + 1 < scaled.rows(); ++i) {
            worst = std::max(worst, std::abs(scaled(i, i) - 4.0) / 4.0);
            worst = std::max(worst, std::abs(scaled(i, i - 1) - 1.0));
            worst = std::max(worst, std::abs(scaled(i, i + 1) - 1.0));
        }
        return make_result(worst <= 10.0 * h * h, worst, "relative error, tol 10 h^2");
    }));

    checks.push_back(run_check("hat residual supported on off-diagonals", [&] {
        // Off-band entries are second order in the scattered amplitude
        // (single-overlap channel through u0_{i+1}); at this amplitude they
        // must sit below 1e-8 of the Gramian scale while the band stays
        // populated four orders above them.
        SnapshotMatrix causal_truth =
            synthetic_causal_truth(hat.family, hat.sampling, hat.u0, 1e-4);
        ProjectionResult hc = causal_projection(causal_truth, hat.u0, m0);
        Eigen::MatrixXd r = residual_matrix(causal_truth, hc);
        const double scale = m0.entries().diagonal().maxCoeff();
        double offband = 0.0;
        double band = 0.0;
        for (int i = 0; i < r.rows(); ++i) {
            for (int j = 0; j < r.cols(); ++j) {
                if (std::abs(i - j) > 1) {
                    offband = std::max(offband, std::abs(r(i, j)));
                } else if (i != j) {
                    band = std::max(band, std::abs(r(i, j)));
                }
            }
        }
        return make_result(offband / scale <= 1e-8 && band > 100.0 * offband, offband / scale,
                           "causal-support fields; off-band |R| over Gramian scale, tol 1e-8");
    }));

    checks.push_back(run_check("hat residual off-band single-channel identity", [&] {
        // R_ij for j >= i+2 factors exactly through the one overlapping
        // background column: R_ij = coeff(i+1, j) <u_i - p_i, u0_{i+1}>.
        SnapshotMatrix causal_truth = synthetic_causal_truth(hat.family, hat.sampling, hat.u0);
        ProjectionResult hc = causal_projection(causal_truth, hat.u0, m0);
        Eigen::MatrixXd r = residual_matrix(causal_truth, hc);
        const double scale = m0.entries().diagonal().maxCoeff();
        double worst = 0.0;
        for (int i = 0; i + 2 < r.rows(); ++i) {
            const Eigen::VectorXd resid =
                causal_truth.matrix().col(i) - hc.projected.matrix().col(i);
            const double channel =
                inner_product(resid, hat.u0.matrix().col(i + 1), hat.grid);
            for (int j = i + 2; j < r.cols(); ++j) {
                worst = std::max(worst,
                                 std::abs(r(i, j) - hc.coefficients(i + 1, j) * channel));
            }
        }
        return make_result(worst / scale <= 1e-10, worst / scale,
                           "exact factorization of off-band entries, tol 1e-10");
    }));

    checks.push_back(run_check("hat kappa of interior-hat Gramian below 3", [&] {
        const int n = m0.size();
        const Eigen::MatrixXd interior = m0.entries().bottomRightCorner(n - 1, n - 1);
        const double kappa = condition_number(interior);
        return make_result(kappa < 3.0, kappa, "full interior hats; bound 3");
    }));

    checks.push_back(run_check("causal equals full projection for steps", [&] {
        SnapshotMatrix causal_truth = synthetic_causal_truth(step.family, step.sampling, step.u0);
        ProjectionResult sc = causal_projection(causal_truth, step.u0, sm0);
        ProjectionResult sf = full_projection(causal_truth, step.u0, sm0);
        const double err = tuple_norm_difference(sc.projected, sf.projected) /
                           std::max(tuple_norm(sf.projected), 1e-300);
        return make_result(err <= 1e-10, err,
                           "causal-support fields, disjoint supports, tol 1e-10");
    }));

    checks.push_back(run_check("Cholesky forward stability (Stewart-Sun)", [&] {
        std::mt19937 rng(20240811);
        std::normal_distribution<double> normal(0.0, 1.0);
        double worst = 0.0;
        bool ok = true;
        for (int trial = 0; trial < 5; ++trial) {
            Eigen::MatrixXd a(10, 10);
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j) a(i, j) = normal(rng);
            GramianMatrix base(a * a.transpose() + 0.5 * Eigen::MatrixXd::Identity(10, 10),
                               GramianSource::FromSnapshots);
            Eigen::MatrixXd e(10, 10);
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j) e(i, j) = normal(rng);
            e = 0.5 * (e + e.transpose()).eval();
            e *= 1e-6 / e.norm();
            GramianMatrix perturbed(base.entries() + e, GramianSource::FromSnapshots);
            StewartSunRecord rec = stewart_sun_check(base, perturbed);
            ok = ok && rec.in_regime && rec.within_factor;
            worst = std::max(worst, rec.ratio);
        }
        return make_result(ok, worst, "max actual/bound over trials, slack factor 2");
    }));

    checks.push_back(run_check("oversampled data diagnosed as SPD failure", [&] {
        // Perturbation larger than the smallest eigenvalue models transfer
        // data whose noise exceeds what the sampling can support.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m0.entries());
        const Eigen::VectorXd v = eig.eigenvectors().col(0);
        GramianMatrix noisy(
            m0.entries() - 1.5 * eig.eigenvalues()(0) * (v * v.transpose()),
            GramianSource::FromData);
        try {
            cholesky(noisy);
        } catch (const NotPositiveDefiniteError& e) {
            CheckResult r = make_result(true, static_cast<double>(e.pivot_index()),
                                        "failure carries pivot index and value");
            r.expected_diagnostic = true;
            return r;
        }
        return make_result(false, 0.0, "expected NotPositiveDefiniteError");
    }));

    return checks;
}

std::vector<CheckResult> mimo_battery(const ExperimentConfig& cfg) {
    std::vector<CheckResult> checks;
    const SpatialGrid grid = cfg.grid();
    const double tau = cfg.tau_for(0);
    const int n = cfg.sampling[0];
    const double dt = cfg.time_step(grid);
    const PulseFamily family{cfg.pulse, tau};

    std::vector<Eigen::VectorXd> sources;
    sources.push_back(evaluate_pulse(family, grid));
    for (size_t s = 1; s < cfg.source_centers.size(); ++s) {
        Eigen::VectorXd g = Eigen::VectorXd::Zero(grid.node_count());
        for (int i = 0; i < grid.node_count(); ++i) {
            const double d = std::abs(grid.node(i) - cfg.source_centers[s]);
            if (d < tau) g(i) = 2.0 * (1.0 - d / tau) / tau;
        }
        sources.push_back(std::move(g));
    }

    const Potential q = cfg.potential.build(grid);
    MimoForward forward = solve_mimo(q, sources, grid, tau, n, dt);
    MimoForward background = solve_mimo(Potential::zero(grid), sources, grid, tau, n, dt);

    checks.push_back(run_check("response matrices symmetric", [&] {
        const double asym = forward.transfer.max_asymmetry();
        return make_result(asym <= 1e-10, asym, "max relative asymmetry, tol 1e-10");
    }));

    BlockGramian m = block_mass_from_data(forward.transfer, n);
    BlockGramian m0 = block_mass_from_snapshots(background.snapshots,
                                                static_cast<int>(sources.size()));
    BlockLiftResult lift = block_lift_internal(background.snapshots, m0, m);

    checks.push_back(run_check("block Gramian interpolation", [&] {
        BlockGramian interpolated = block_mass_from_snapshots(
            lift.lifted, static_cast<int>(sources.size()));
        const double err = relative_frobenius(interpolated.entries(), m.entries());
        return make_result(err <= 1e-8, err, "rel Frobenius, tol 1e-8");
    }));

    checks.push_back(run_check("block factor reproduces the matrix", [&] {
        const Eigen::MatrixXd& l = block_cholesky(m);
        const double err = relative_frobenius(l * l.transpose(), m.entries());
        return make_result(err <= 1e-10, err, "rel Frobenius, tol 1e-10");
    }));

    checks.push_back(run_check("block q = 0 collapse", [&] {
        BlockGramian zm = block_mass_from_data(background.transfer, n);
        BlockGramian zm0 = block_mass_from_snapshots(background.snapshots,
                                                     static_cast<int>(sources.size()));
        BlockLiftResult zlift = block_lift_internal(background.snapshots, zm0, zm);
        const double err = tuple_norm_difference(zlift.lifted, background.snapshots) /
                           tuple_norm(background.snapshots);
        return make_result(err <= 1e-8, err, "relative collapse error, tol 1e-8");
    }));

    checks.push_back(run_check("K = 1 blocks reduce to the scalar path", [&] {
        std::vector<Eigen::VectorXd> single(1, sources[0]);
        MimoForward mono = solve_mimo(q, single, grid, tau, n, dt);
        std::vector<double> flat(2 * n - 1);
        for (int k = 0; k < 2 * n - 1; ++k) flat[k] = mono.transfer(k)(0, 0);
        GramianMatrix scalar = mass_from_data(TransferSeries(flat, tau), n);
        BlockGramian blocked = block_mass_from_data(mono.transfer, n);
        const double err = relative_frobenius(blocked.entries(), scalar.entries());
        return make_result(err <= 1e-14, err, "identical assembly, tol 1e-14");
    }));

    return checks;
}

}  // namespace

bool VerifyReport::all_pass() const {
    for (const auto& check : checks) {
        if (!check.pass) return false;
    }
    return true;
}

VerifyReport verify_suite(const std::string& preset_name) {
    VerifyReport report;
    ExperimentConfig cfg =
        preset_name == "default" ? ExperimentConfig::preset("paper-sec8-desk")
                                 : ExperimentConfig::preset(preset_name);

    report.checks.push_back(run_check("preset validates", [&] {
        cfg.validate();
        return make_result(true, static_cast<double>(cfg.sampling.size()),
                           "sampling entries checked against the grid");
    }));

    for (auto& check : common_battery()) report.checks.push_back(std::move(check));
    if (cfg.source_count > 1 || preset_name == "default") {
        const ExperimentConfig mimo_cfg =
            cfg.source_count > 1 ? cfg : ExperimentConfig::preset("mimo-desk");
        for (auto& check : mimo_battery(mimo_cfg)) report.checks.push_back(std::move(check));
    }
    return report;
}

}  // namespace waverom
