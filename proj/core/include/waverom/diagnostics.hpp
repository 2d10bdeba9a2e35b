#pragma once

#include <vector>

#include <Eigen/Core>

#include "waverom/gramian.hpp"
#include "waverom/lift.hpp"
#include "waverom/projection.hpp"
#include "waverom/snapshot.hpp"

namespace waverom {

/// Spectral condition number lambda_max / lambda_min by dense symmetric
/// eigensolve. Throws NotPositiveDefiniteError when the smallest eigenvalue
/// is not positive.
double condition_number(const GramianMatrix& m);
double condition_number(const Eigen::MatrixXd& symmetric);

/// Forward-stability check of the Cholesky factorization: with
/// eps = ||M - Mhat||_F / ||M||_2, first order in eps,
/// ||L - Lhat||_F <= (1/sqrt(2)) ||L||_2 kappa_2(M) eps.
struct StewartSunRecord {
    double eps;          ///< ||M - Mhat||_F / ||M||_2
    double kappa;        ///< kappa_2(M)
    double bound;        ///< (1/sqrt(2)) ||L||_2 kappa eps
    double actual;       ///< ||L - Lhat||_F
    double ratio;        ///< actual / bound (0 when bound is 0)
    bool in_regime;      ///< eps * kappa < 1
    bool within_factor;  ///< actual <= 2 * bound (the O(eps^2) slack)
};
StewartSunRecord stewart_sun_check(GramianMatrix& m, GramianMatrix& mhat);

/// Every quantity appearing in the error bounds, evaluated on one run.
/// All norms are tuple norms over the snapshot families;
/// diag_ratios holds |Lhat_ii / (L0)_ii - 1|.
struct BoundReport {
    int n = 0;
    double tau = 0.0;
    double eps = 0.0;                 ///< kappa_2(M) ||M - Mhat||_F / ||M||_2
    double kappa = 0.0;               ///< kappa_2(M)
    double r_frobenius = 0.0;         ///< ||R||_F
    double best_error = 0.0;          ///< ||U - Uhat||_2
    double lift_vs_projection = 0.0;  ///< ||U_lift - Uhat||_2
    double lift_error = 0.0;          ///< ||U_lift - U||_2
    double bound_rhs = 0.0;           ///< right-hand side of the triangle bound
    std::vector<double> diag_ratios;
    double diag_ratio_max = 0.0;
    bool in_regime = false;        ///< eps < 0.1
    bool bound_satisfied = false;  ///< lift_error/sqrt(n) <= 2 * bound_rhs
    StewartSunRecord stewart_sun{};
    /// Mass-gap bound: ||M - Mhat||_F <= best_error^2 + r_frobenius (+ slack).
    double mass_gap = 0.0;  ///< ||M - Mhat||_F
};

/// Fills a BoundReport from one consistent run: true snapshots u, background
/// u0, the data Gramian m, and the lift. Out-of-regime runs are reported,
/// never rejected.
BoundReport evaluate_bounds(const SnapshotMatrix& u, const SnapshotMatrix& u0, GramianMatrix& m,
                            const LiftResult& lift, const ProjectionResult& causal);

}  // namespace waverom
