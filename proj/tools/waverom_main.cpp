#include <filesystem>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "waverom/waverom.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

waverom::ExperimentConfig load_config(const std::string& source) {
    namespace fs = std::filesystem;
    if (fs::exists(source)) {
        return waverom::ExperimentConfig::from_file(source);
    }
    return waverom::ExperimentConfig::preset(source);
}

void print_record(const waverom::ConvergenceRecord& record) {
    std::cout << "n,tau,lift_error,best_error,lift_vs_projection,kappa,eps\n";
    for (const auto& row : record.rows) {
        std::cout << row.n << ',' << waverom::format_number(row.tau) << ','
                  << waverom::format_number(row.lift_error) << ','
                  << waverom::format_number(row.best_error) << ','
                  << waverom::format_number(row.lift_vs_projection) << ','
                  << waverom::format_number(row.kappa) << ','
                  << waverom::format_number(row.eps) << '\n';
    }
    if (record.lift_fit) {
        std::cout << "lift slope (log error vs log tau): " << record.lift_fit->slope << '\n';
    }
    if (record.projection_fit) {
        std::cout << "projection slope: " << record.projection_fit->slope << '\n';
    } else if (!record.lift_fit) {
        std::cout << "slope fit skipped (errors at the solver floor or too few rows)\n";
    }
}

int run_command(const std::string& source, const std::string& output_dir, bool dump_gramians,
                bool dump_snapshots) {
    waverom::ExperimentConfig cfg = load_config(source);
    if (!output_dir.empty()) cfg.output_dir = output_dir;

    waverom::ConvergenceRecord record = waverom::run_experiment(cfg);
    waverom::emit_outputs(record, cfg);
    print_record(record);

    if (dump_gramians || dump_snapshots) {
        // Rebuild the smallest-n stage for the inspection dumps.
        const waverom::SpatialGrid grid = cfg.grid();
        const waverom::Potential q = cfg.potential.build(grid);
        const double tau = cfg.tau_for(0);
        const waverom::PulseFamily family{cfg.pulse, tau};
        const waverom::TimeSampling sampling = cfg.sampling_for(0);
        const Eigen::VectorXd g = waverom::evaluate_pulse(family, grid);
        waverom::SolverConfig solver{cfg.time_step(grid), tau, cfg.sampling[0], true};
        waverom::ForwardResult forward = waverom::solve_fd(q, g, grid, solver);
        waverom::SnapshotMatrix u0 = waverom::background_snapshots(family, sampling, grid);
        waverom::GramianMatrix m0 = waverom::mass_from_snapshots(u0);
        waverom::GramianMatrix m = waverom::mass_from_data(*forward.transfer, cfg.sampling[0]);
        const std::filesystem::path dir(cfg.output_dir);
        if (dump_gramians) {
            waverom::write_matrix_csv(m.entries(), dir / "gramian_data.csv");
            waverom::write_matrix_csv(m0.entries(), dir / "gramian_background.csv");
            waverom::write_matrix_csv(waverom::cholesky(m), dir / "gramian_data_factor.csv");
            waverom::write_matrix_csv(waverom::cholesky(m0),
                                      dir / "gramian_background_factor.csv");
        }
        if (dump_snapshots) {
            waverom::write_snapshot_debug_csv(forward.snapshots, dir / "snapshots_true.csv");
            waverom::write_snapshot_debug_csv(u0, dir / "snapshots_background.csv");
        }
    }
    std::cout << "outputs written to " << cfg.output_dir << '\n';
    return kExitOk;
}

int verify_command(const std::string& preset) {
    waverom::VerifyReport report = waverom::verify_suite(preset);
    std::cout << std::left << std::setw(48) << "check" << std::setw(8) << "status"
              << "measured\n";
    for (const auto& check : report.checks) {
        std::string status = check.pass ? "pass" : "FAIL";
        if (check.expected_diagnostic && check.pass) status = "pass*";
        std::cout << std::left << std::setw(48) << check.name << std::setw(8) << status
                  << waverom::format_number(check.measured) << "  (" << check.detail << ")\n";
    }
    if (!report.all_pass()) {
        std::cout << "verify: FAILURES present\n";
        return kExitNumerical;
    }
    std::cout << "verify: all checks pass (* = expected diagnostic)\n";
    return kExitOk;
}

int rate_command(const std::string& csv_path, const std::string& column) {
    waverom::CsvTable table = waverom::read_table_csv(csv_path);
    const int tau_col = table.column("tau");
    const int err_col = table.column(column);
    if (tau_col < 0 || err_col < 0) {
        throw waverom::ConfigError("rate: CSV needs 'tau' and '" + column + "' columns");
    }
    std::vector<double> tau, err;
    for (const auto& row : table.rows) {
        tau.push_back(row[tau_col]);
        err.push_back(row[err_col]);
    }
    waverom::RateFit fit = waverom::fit_rate(tau, err);
    std::cout << "column: " << column << '\n';
    std::cout << "slope: " << waverom::format_number(fit.slope) << '\n';
    std::cout << "intercept: " << waverom::format_number(fit.intercept) << '\n';
    std::cout << "step ratios:";
    for (double r : fit.step_ratios) std::cout << ' ' << waverom::format_number(r);
    std::cout << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "waverom: data-driven reconstruction of internal wave fields from boundary "
        "transfer data, with convergence and bound diagnostics"};
    app.require_subcommand(1);

    std::string run_source;
    std::string run_output;
    bool dump_gramians = false;
    bool dump_snapshots = false;
    CLI::App* run = app.add_subcommand("run", "run a convergence study from a config or preset");
    run->add_option("config", run_source, "config file path or preset name")->required();
    run->add_option("--output-dir", run_output, "override the config output directory");
    run->add_flag("--dump-gramians", dump_gramians, "export Gramians and factors as CSV");
    run->add_flag("--dump-snapshots", dump_snapshots, "export dense snapshot CSVs (debug)");

    std::string verify_preset = "default";
    CLI::App* verify = app.add_subcommand("verify", "run the executable invariant battery");
    verify->add_option("preset", verify_preset, "preset name (default: default)");

    std::string rate_csv;
    std::string rate_column = "lift_error";
    CLI::App* rate = app.add_subcommand("rate", "fit log-log slope from a convergence.csv");
    rate->add_option("csv", rate_csv, "path to convergence.csv")->required();
    rate->add_option("--column", rate_column, "error column to fit (default lift_error)");

    std::string dump_preset;
    CLI::App* dump = app.add_subcommand("dump-config", "print a preset config");
    dump->add_option("preset", dump_preset, "preset name")->required();

    try {
        app.parse(argc, argv);
        if (run->parsed()) {
            return run_command(run_source, run_output, dump_gramians, dump_snapshots);
        }
        if (verify->parsed()) {
            return verify_command(verify_preset);
        }
        if (rate->parsed()) {
            return rate_command(rate_csv, rate_column);
        }
        if (dump->parsed()) {
            std::cout << waverom::ExperimentConfig::preset(dump_preset).to_text();
            return kExitOk;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    } catch (const waverom::NotPositiveDefiniteError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const waverom::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const waverom::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
