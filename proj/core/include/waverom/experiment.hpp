#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "waverom/diagnostics.hpp"
#include "waverom/grid.hpp"
#include "waverom/sampling.hpp"

namespace waverom {

/// Named potential shape, buildable on any grid.
struct PotentialSpec {
    enum class Kind { Zero, Gaussian, File };
    Kind kind = Kind::Zero;
    double amplitude = 0.0;
    double center = 0.0;
    double alpha = 0.0;
    std::string path;

    Potential build(const SpatialGrid& grid) const;
    std::string to_text() const;
    static PotentialSpec parse(const std::string& text);
};

/// Where the background snapshot basis comes from: the closed-form q = 0
/// translates, or a q = 0 forward solve on the same grid (matched
/// quadrature and time discretization).
enum class BackgroundSource { Analytic, Solved };

/// Time-step rule for the forward solves.
/// Half: dt = h/2 (the reproduction default).
/// NearUnit: dt = h M/(M+1) with M = min tau/h over the study; one cell
///   short of the unit Courant ratio, where the 1D scheme is almost
///   dispersion-free (needed to keep discontinuous pulses clean).
/// Ratio: dt = ratio * h.
struct DtRule {
    enum class Kind { Half, NearUnit, Ratio };
    Kind kind = Kind::Half;
    double ratio = 0.5;

    std::string to_text() const;
    static DtRule parse(const std::string& text);
};

/// One convergence study: a fixed fine grid and potential, one pulse family,
/// and a list of sampling resolutions n. Fully deterministic; no seeds.
struct ExperimentConfig {
    std::string name = "custom";
    PulseKind pulse = PulseKind::Hat;
    double domain_length = 0.0;
    int fine_cell_count = 0;
    PotentialSpec potential;
    double final_time = 0.0;          ///< hat: T = n tau exactly; step: nominal
    std::vector<int> sampling;        ///< n values, increasing
    std::vector<double> tau_values;   ///< per-n tau; required for step, derived for hat
    DtRule dt_rule;
    BackgroundSource background = BackgroundSource::Analytic;
    std::string output_dir = "out";
    int source_count = 1;             ///< MIMO sources (verify-only when > 1)
    std::vector<double> source_centers;

    SpatialGrid grid() const { return SpatialGrid(domain_length, fine_cell_count); }
    double tau_for(size_t index) const;
    TimeSampling sampling_for(size_t index) const;
    double time_step(const SpatialGrid& grid) const;

    /// Throws ConfigError with a precise message on any violated invariant
    /// (tau/h not an even integer, waves reaching the far boundary, ...).
    void validate() const;

    std::string to_text() const;
    static ExperimentConfig parse_text(const std::string& text);
    static ExperimentConfig from_file(const std::filesystem::path& path);

    /// Shipped presets: paper-sec8, paper-sec8-desk, step-desk, mimo-desk,
    /// zero-q-desk. Throws ConfigError on unknown names.
    static ExperimentConfig preset(const std::string& name);
    static std::vector<std::string> preset_names();
};

/// Per-n measurements. Tuple norms are divided by sqrt(n).
struct ConvergenceRow {
    int n = 0;
    double tau = 0.0;
    double lift_error = 0.0;          ///< ||U_lift - U||_2 / sqrt(n)
    double best_error = 0.0;          ///< ||U - Uhat||_2 / sqrt(n)
    double lift_vs_projection = 0.0;  ///< ||U_lift - Uhat||_2 / sqrt(n)
    double kappa = 0.0;
    double eps = 0.0;
    double diag_ratio_max = 0.0;
    double localization = 0.0;  ///< fraction of squared error within 3 tau of the front
};

/// Least-squares fit of log(error) against log(tau).
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::vector<double> step_ratios;  ///< error(tau_i) / error(tau_{i+1})
};

/// Fits a line through (log tau, log error); requires at least three rows
/// and positive values. Also returns the per-step error ratios.
RateFit fit_rate(const std::vector<double>& tau, const std::vector<double>& error);

/// Per-n terminal-time profiles kept for the output files.
struct RunArtifacts {
    int n = 0;
    BoundReport report;
    Eigen::VectorXd x;
    Eigen::VectorXd reconstructed;
    Eigen::VectorXd truth;
    Eigen::VectorXd background;
    Eigen::VectorXd causal;
};

struct ConvergenceRecord {
    std::vector<ConvergenceRow> rows;  ///< sorted by decreasing tau
    std::vector<RunArtifacts> artifacts;
    std::optional<RateFit> lift_fit;        ///< absent when errors sit on the solver floor
    std::optional<RateFit> projection_fit;
};

/// Runs the full pipeline for every n in the config: forward solve, mass
/// from data, lift, projections, bounds. Throws ConfigError on invalid
/// configs and NotPositiveDefiniteError (with the offending n named in the
/// message) on factorization failures.
ConvergenceRecord run_experiment(const ExperimentConfig& cfg);

/// Writes convergence.csv, bound_report_n<k>.json, snapshots_n<k>.csv and
/// error_profile_n<k>.csv under cfg.output_dir. Deterministic byte-for-byte
/// for a fixed config. Throws IoError with the offending path.
void emit_outputs(const ConvergenceRecord& record, const ExperimentConfig& cfg);

/// One line of the executable invariant table printed by `verify`.
struct CheckResult {
    std::string name;
    bool pass = false;
    bool expected_diagnostic = false;  ///< failure paths that must trigger
    double measured = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

/// Executable check of the cross-module identities (Gramian interpolation,
/// norm identities, q = 0 collapses, oracle comparison, residual sparsity,
/// condition-number bounds, Cholesky stability, MIMO interpolation) on
/// small presets.
VerifyReport verify_suite(const std::string& preset_name);

}  // namespace waverom
