#include "waverom/diagnostics.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "waverom/errors.hpp"

namespace waverom {

namespace {

struct Spectrum {
    double min;
    double max;
};

Spectrum symmetric_spectrum(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) {
        throw Error("condition_number: eigensolve failed");
    }
    return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

}  // namespace

double condition_number(const Eigen::MatrixXd& symmetric) {
    const Spectrum s = symmetric_spectrum(symmetric);
    if (!(s.min > 0.0)) {
        throw NotPositiveDefiniteError(-1, s.min);
    }
    return s.max / s.min;
}

double condition_number(const GramianMatrix& m) { return condition_number(m.entries()); }

StewartSunRecord stewart_sun_check(GramianMatrix& m, GramianMatrix& mhat) {
    if (m.size() != mhat.size()) {
        throw ConfigError("stewart_sun_check: size mismatch");
    }
    const Spectrum s = symmetric_spectrum(m.entries());
    if (!(s.min > 0.0)) {
        throw NotPositiveDefiniteError(-1, s.min);
    }
    StewartSunRecord rec{};
    rec.kappa = s.max / s.min;
    rec.eps = (m.entries() - mhat.entries()).norm() / s.max;
    rec.in_regime = rec.eps * rec.kappa < 1.0;

    const Eigen::MatrixXd& l = cholesky(m);
    const Eigen::MatrixXd& lhat = cholesky(mhat);
    const double l_two_norm = std::sqrt(s.max);  // ||L||_2^2 = lambda_max(M)
    rec.bound = (1.0 / std::sqrt(2.0)) * l_two_norm * rec.kappa * rec.eps;
    rec.actual = (l - lhat).norm();
    rec.ratio = rec.bound > 0.0 ? rec.actual / rec.bound : 0.0;
    rec.within_factor = rec.actual <= 2.0 * rec.bound + 1e-14 * l.norm();
    return rec;
}

BoundReport evaluate_bounds(const SnapshotMatrix& u, const SnapshotMatrix& u0, GramianMatrix& m,
                            const LiftResult& lift, const ProjectionResult& causal) {
    if (causal.kind != ProjectionKind::Causal) {
        throw ConfigError("evaluate_bounds: expects the causal projection");
    }
    const int n = u.snapshot_count();
    BoundReport report;
    report.n = n;

    GramianMatrix mhat = mass_from_snapshots(causal.projected);
    report.mass_gap = (m.entries() - mhat.entries()).norm();

    const Spectrum s = symmetric_spectrum(m.entries());
    if (!(s.min > 0.0)) {
        throw NotPositiveDefiniteError(-1, s.min);
    }
    report.kappa = s.max / s.min;
    report.eps = report.kappa * report.mass_gap / s.max;
    report.in_regime = report.eps < 0.1;

    const Eigen::MatrixXd r = residual_matrix(u, causal);
    report.r_frobenius = r.norm();
    report.best_error = tuple_norm_difference(u, causal.projected);
    report.lift_vs_projection = tuple_norm_difference(lift.lifted, causal.projected);
    report.lift_error = tuple_norm_difference(lift.lifted, u);

    const double u_norm = tuple_norm(u);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    report.bound_rhs =
        (u_norm > 0.0)
            ? report.kappa / u_norm *
                      (report.best_error * report.best_error + report.r_frobenius) +
                  report.best_error / sqrt_n
            : 0.0;
    report.bound_satisfied = report.lift_error / sqrt_n <=
                             2.0 * report.bound_rhs + 1e-12 * u_norm;

    const Eigen::MatrixXd& lhat = cholesky(mhat);
    const Eigen::MatrixXd& l0 = lift.chol_background;
    report.diag_ratios.resize(n);
    report.diag_ratio_max = 0.0;
    for (int i = 0; i < n; ++i) {
        report.diag_ratios[i] = std::abs(lhat(i, i) / l0(i, i) - 1.0);
        report.diag_ratio_max = std::max(report.diag_ratio_max, report.diag_ratios[i]);
    }

    report.stewart_sun = stewart_sun_check(m, mhat);
    (void)u0;
    return report;
}

}  // namespace waverom
