#include "waverom/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "waverom/io.hpp"
#include "waverom/lift.hpp"
#include "waverom/projection.hpp"
#include "waverom/pulse.hpp"
#include "waverom/wave_solver.hpp"

namespace waverom {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(trim(item));
    return parts;
}

double parse_double(const std::string& text, const std::string& key) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + text + "' for " + key);
    }
}

int parse_int(const std::string& text, const std::string& key) {
    const double v = parse_double(text, key);
    const int i = static_cast<int>(std::llround(v));
    if (std::abs(v - i) > 1e-9) {
        throw ConfigError("config: expected integer for " + key + ", got '" + text + "'");
    }
    return i;
}

}  // namespace

Potential PotentialSpec::build(const SpatialGrid& grid) const {
    switch (kind) {
        case Kind::Zero:
            return Potential::zero(grid);
        case Kind::Gaussian:
            return Potential::gaussian(grid, amplitude, center, alpha);
        case Kind::File: {
            std::ifstream in(path);
            if (!in.is_open()) {
                throw IoError("cannot open potential file " + path);
            }
            Eigen::VectorXd q(grid.node_count());
            for (int i = 0; i < grid.node_count(); ++i) {
                if (!(in >> q(i))) {
                    throw ConfigError("potential file " + path + ": expected " +
                                      std::to_string(grid.node_count()) + " node values");
                }
            }
            return Potential(std::move(q), grid);
        }
    }
    throw ConfigError("potential: unknown kind");
}

std::string PotentialSpec::to_text() const {
    switch (kind) {
        case Kind::Zero:
            return "zero";
        case Kind::Gaussian: {
            std::stringstream ss;
            ss << "gaussian:" << amplitude << ',' << center << ',' << alpha;
            return ss.str();
        }
        case Kind::File:
            return "file:" + path;
    }
    return "zero";
}

PotentialSpec PotentialSpec::parse(const std::string& text) {
    PotentialSpec spec;
    if (text == "zero") {
        spec.kind = Kind::Zero;
        return spec;
    }
    if (text.rfind("gaussian:", 0) == 0) {
        const auto parts = split(text.substr(9), ',');
        if (parts.size() != 3) {
            throw ConfigError("potential: expected gaussian:amplitude,center,alpha");
        }
        spec.kind = Kind::Gaussian;
        spec.amplitude = parse_double(parts[0], "potential");
        spec.center = parse_double(parts[1], "potential");
        spec.alpha = parse_double(parts[2], "potential");
        return spec;
    }
    if (text.rfind("file:", 0) == 0) {
        spec.kind = Kind::File;
        spec.path = text.substr(5);
        return spec;
    }
    throw ConfigError("potential: unknown spec '" + text + "'");
}

std::string DtRule::to_text() const {
    switch (kind) {
        case Kind::Half:
            return "half";
        case Kind::NearUnit:
            return "near-unit";
        case Kind::Ratio: {
            std::stringstream ss;
            ss << "ratio:" << ratio;
            return ss.str();
        }
    }
    return "half";
}

DtRule DtRule::parse(const std::string& text) {
    DtRule rule;
    if (text == "half" || text == "half_h") {
        rule.kind = Kind::Half;
        rule.ratio = 0.5;
        return rule;
    }
    if (text == "near-unit" || text == "near_unit") {
        rule.kind = Kind::NearUnit;
        return rule;
    }
    if (text.rfind("ratio:", 0) == 0) {
        rule.kind = Kind::Ratio;
        rule.ratio = parse_double(text.substr(6), "dt_rule");
        return rule;
    }
    throw ConfigError("config: dt_rule must be half, near-unit, or ratio:<x>");
}

double ExperimentConfig::time_step(const SpatialGrid& g) const {
    switch (dt_rule.kind) {
        case DtRule::Kind::Half:
            return 0.5 * g.step();
        case DtRule::Kind::Ratio:
            return dt_rule.ratio * g.step();
        case DtRule::Kind::NearUnit: {
            double tau_min = tau_for(0);
            for (size_t i = 1; i < sampling.size(); ++i) tau_min = std::min(tau_min, tau_for(i));
            const int m = static_cast<int>(std::round(tau_min / g.step()));
            return g.step() * m / (m + 1.0);
        }
    }
    return 0.5 * g.step();
}

double ExperimentConfig::tau_for(size_t index) const {
    if (index >= sampling.size()) {
        throw ConfigError("config: sampling index out of range");
    }
    if (!tau_values.empty()) return tau_values[index];
    if (pulse == PulseKind::Hat) return final_time / sampling[index];
    throw ConfigError("config: step runs need an explicit tau list");
}

TimeSampling ExperimentConfig::sampling_for(size_t index) const {
    return TimeSampling::for_family(pulse, tau_for(index), sampling[index]);
}

void ExperimentConfig::validate() const {
    if (!(domain_length > 0.0)) throw ConfigError("config: domain_length must be positive");
    if (fine_cell_count < 2) throw ConfigError("config: fine_cell_count must be at least 2");
    if (sampling.empty()) throw ConfigError("config: sampling list is empty");
    if (!std::is_sorted(sampling.begin(), sampling.end()) ||
        std::adjacent_find(sampling.begin(), sampling.end()) != sampling.end()) {
        throw ConfigError("config: sampling list must be strictly increasing");
    }
    if (!tau_values.empty() && tau_values.size() != sampling.size()) {
        throw ConfigError("config: tau list length must match the sampling list");
    }
    if (pulse == PulseKind::Step && tau_values.empty()) {
        throw ConfigError(
            "config: step runs need an explicit tau list (final_time/(n-1/2) is almost never "
            "commensurate with the grid; final_time is nominal for steps)");
    }
    if (pulse == PulseKind::Hat && final_time <= 0.0 && tau_values.empty()) {
        throw ConfigError("config: hat runs need final_time (tau = final_time/n)");
    }
    if (dt_rule.kind == DtRule::Kind::Ratio &&
        (!(dt_rule.ratio > 0.0) || dt_rule.ratio > 1.0)) {
        throw ConfigError("config: dt ratio must lie in (0, 1] (CFL)");
    }
    const SpatialGrid g = grid();
    const double dt = time_step(g);
    for (size_t i = 0; i < sampling.size(); ++i) {
        const double tau = tau_for(i);
        const PulseFamily family{pulse, tau};
        validate_pulse_resolution(family, g);
        validate_sampling(sampling_for(i), g);
        const double stride = tau / dt;
        if (std::abs(stride - std::round(stride)) > 1e-9 * stride) {
            throw ConfigError("config: tau must be an integer multiple of dt (n = " +
                              std::to_string(sampling[i]) + ")");
        }
    }
    if (source_count < 1) throw ConfigError("config: sources must be >= 1");
    if (source_count > 1) {
        if (static_cast<int>(source_centers.size()) != source_count) {
            throw ConfigError("config: source_centers must list one center per source");
        }
        for (double c : source_centers) {
            if (c < 0.0 || c >= domain_length) {
                throw ConfigError("config: source center outside the domain");
            }
        }
    }
}

std::string ExperimentConfig::to_text() const {
    std::stringstream ss;
    ss << "name = " << name << '\n';
    ss << "pulse = " << to_string(pulse) << '\n';
    ss << "domain_length = " << domain_length << '\n';
    ss << "fine_cell_count = " << fine_cell_count << '\n';
    ss << "potential = " << potential.to_text() << '\n';
    ss << "final_time = " << final_time << '\n';
    ss << "sampling = ";
    for (size_t i = 0; i < sampling.size(); ++i) ss << (i ? "," : "") << sampling[i];
    ss << '\n';
    if (!tau_values.empty()) {
        ss << "tau = ";
        for (size_t i = 0; i < tau_values.size(); ++i) ss << (i ? "," : "") << tau_values[i];
        ss << '\n';
    }
    ss << "dt_rule = " << dt_rule.to_text() << '\n';
    ss << "background = " << (background == BackgroundSource::Analytic ? "analytic" : "solved")
       << '\n';
    ss << "output_dir = " << output_dir << '\n';
    if (source_count > 1) {
        ss << "sources = " << source_count << '\n';
        ss << "source_centers = ";
        for (size_t i = 0; i < source_centers.size(); ++i)
            ss << (i ? "," : "") << source_centers[i];
        ss << '\n';
    }
    return ss.str();
}

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "name") {
            cfg.name = value;
        } else if (key == "pulse") {
            cfg.pulse = pulse_kind_from_string(value);
        } else if (key == "domain_length") {
            cfg.domain_length = parse_double(value, key);
        } else if (key == "fine_cell_count") {
            cfg.fine_cell_count = parse_int(value, key);
        } else if (key == "potential") {
            cfg.potential = PotentialSpec::parse(value);
        } else if (key == "final_time") {
            cfg.final_time = parse_double(value, key);
        } else if (key == "sampling") {
            cfg.sampling.clear();
            for (const auto& item : split(value, ',')) {
                cfg.sampling.push_back(parse_int(item, key));
            }
        } else if (key == "tau") {
            cfg.tau_values.clear();
            for (const auto& item : split(value, ',')) {
                cfg.tau_values.push_back(parse_double(item, key));
            }
        } else if (key == "dt_rule") {
            cfg.dt_rule = DtRule::parse(value);
        } else if (key == "background") {
            if (value == "analytic") {
                cfg.background = BackgroundSource::Analytic;
            } else if (value == "solved") {
                cfg.background = BackgroundSource::Solved;
            } else {
                throw ConfigError("config: background must be analytic or solved");
            }
        } else if (key == "output_dir") {
            cfg.output_dir = value;
        } else if (key == "sources") {
            cfg.source_count = parse_int(value, key);
        } else if (key == "source_centers") {
            cfg.source_centers.clear();
            for (const auto& item : split(value, ',')) {
                cfg.source_centers.push_back(parse_double(item, key));
            }
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw IoError("cannot open config " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    ExperimentConfig cfg = parse_text(buffer.str());
    cfg.validate();
    return cfg;
}

std::vector<std::string> ExperimentConfig::preset_names() {
    return {"paper-sec8", "paper-sec8-desk", "step-desk", "mimo-desk", "zero-q-desk"};
}

ExperimentConfig ExperimentConfig::preset(const std::string& name) {
    ExperimentConfig cfg;
    cfg.name = name;
    if (name == "paper-sec8" || name == "paper-sec8-desk") {
        cfg.pulse = PulseKind::Hat;
        cfg.domain_length = 200.0;
        cfg.fine_cell_count = (name == "paper-sec8") ? 153600 : 38400;
        cfg.potential = PotentialSpec::parse("gaussian:0.3,70,0.04");
        cfg.final_time = 100.0;
        cfg.sampling = {75, 150, 300, 600};
        // Matched-discretization backgrounds: the singular part of the
        // snapshots then cancels exactly against the basis, which is what
        // keeps the projection on the tau^(1/2) track at finite h.
        cfg.background = BackgroundSource::Solved;
        cfg.output_dir = "out/" + name;
    } else if (name == "step-desk") {
        cfg.pulse = PulseKind::Step;
        cfg.domain_length = 40.0;
        // The discontinuous pulse needs a fine grid and a near-unit
        // Courant ratio to keep its dispersive tail below the
        // tau-approximation error.
        cfg.fine_cell_count = 81920;
        cfg.potential = PotentialSpec::parse("gaussian:0.1,14,0.04");
        cfg.dt_rule = DtRule::parse("near-unit");
        // Nominal horizon; each run ends at (n - 1/2) tau just below it.
        cfg.final_time = 18.0;
        cfg.sampling = {36, 72, 144, 288};
        cfg.tau_values = {0.5, 0.25, 0.125, 0.0625};
        cfg.background = BackgroundSource::Solved;
        cfg.output_dir = "out/step-desk";
    } else if (name == "mimo-desk") {
        cfg.pulse = PulseKind::Hat;
        cfg.domain_length = 40.0;
        cfg.fine_cell_count = 1920;
        cfg.potential = PotentialSpec::parse("gaussian:0.05,8,0.25");
        cfg.final_time = 6.0;
        cfg.sampling = {12};
        cfg.background = BackgroundSource::Solved;
        cfg.source_count = 2;
        cfg.source_centers = {0.0, 3.0};
        cfg.output_dir = "out/mimo-desk";
    } else if (name == "zero-q-desk") {
        cfg.pulse = PulseKind::Hat;
        cfg.domain_length = 40.0;
        cfg.fine_cell_count = 1920;
        cfg.potential = PotentialSpec::parse("zero");
        cfg.final_time = 8.0;
        cfg.sampling = {8, 16, 32};
        cfg.background = BackgroundSource::Solved;
        cfg.output_dir = "out/zero-q-desk";
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    cfg.validate();
    return cfg;
}

RateFit fit_rate(const std::vector<double>& tau, const std::vector<double>& error) {
    if (tau.size() != error.size()) {
        throw ConfigError("fit_rate: tau and error lengths differ");
    }
    if (tau.size() < 3) {
        throw ConfigError("fit_rate: need at least 3 rows");
    }
    std::vector<double> x(tau.size()), y(tau.size());
    for (size_t i = 0; i < tau.size(); ++i) {
        if (!(tau[i] > 0.0) || !(error[i] > 0.0)) {
            throw ConfigError("fit_rate: values must be positive for the log-log fit");
        }
        x[i] = std::log(tau[i]);
        y[i] = std::log(error[i]);
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (size_t i = 0; i + 1 < error.size(); ++i) {
        fit.step_ratios.push_back(error[i] / error[i + 1]);
    }
    return fit;
}

namespace {

// Fraction of the squared terminal error within distance 3 tau of the front.
double error_localization(const Eigen::VectorXd& diff, const SpatialGrid& grid, double front,
                          double tau) {
    const Eigen::VectorXd& w = grid.quadrature_weights();
    double total = 0.0;
    double near_front = 0.0;
    for (int i = 0; i < grid.node_count(); ++i) {
        const double contribution = w(i) * diff(i) * diff(i);
        total += contribution;
        if (std::abs(grid.node(i) - front) <= 3.0 * tau) near_front += contribution;
    }
    return total > 0.0 ? near_front / total : 0.0;
}

}  // namespace

ConvergenceRecord run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.source_count > 1) {
        throw ConfigError("run: multi-source (MIMO) configs are exercised via `verify " +
                          cfg.name + "`");
    }
    const SpatialGrid grid = cfg.grid();
    const Potential q = cfg.potential.build(grid);

    ConvergenceRecord record;
    for (size_t i = 0; i < cfg.sampling.size(); ++i) {
        const int n = cfg.sampling[i];
        const double tau = cfg.tau_for(i);
        const TimeSampling sampling = cfg.sampling_for(i);
        const PulseFamily family{cfg.pulse, tau};
        const Eigen::VectorXd g = evaluate_pulse(family, grid);

        SolverConfig solver;
        solver.dt = cfg.time_step(grid);
        solver.tau = tau;
        solver.snapshot_count = n;
        solver.record_boundary = true;

        ForwardResult forward = solve_fd(q, g, grid, solver);
        const SnapshotMatrix& truth = forward.snapshots;

        SnapshotMatrix u0 = [&] {
            if (cfg.background == BackgroundSource::Analytic) {
                return background_snapshots(family, sampling, grid);
            }
            if (q.is_zero()) return truth;
            SolverConfig bg_solver = solver;
            bg_solver.record_boundary = false;
            return solve_fd(Potential::zero(grid), g, grid, bg_solver).snapshots;
        }();

        GramianMatrix m0 = mass_from_snapshots(u0);
        GramianMatrix m = mass_from_data(*forward.transfer, n);

        BoundReport report;
        LiftResult lift = [&] {
            try {
                cholesky(m0);
                cholesky(m);
                return lift_internal(u0, m0, m);
            } catch (const NotPositiveDefiniteError& e) {
                throw NotPositiveDefiniteError(e.pivot_index(), e.pivot_value(),
                                               "n = " + std::to_string(n));
            }
        }();
        ProjectionResult causal = causal_projection(truth, u0, m0);
        report = evaluate_bounds(truth, u0, m, lift, causal);
        report.tau = tau;

        const double sqrt_n = std::sqrt(static_cast<double>(n));
        ConvergenceRow row;
        row.n = n;
        row.tau = tau;
        row.lift_error = report.lift_error / sqrt_n;
        row.best_error = report.best_error / sqrt_n;
        row.lift_vs_projection = report.lift_vs_projection / sqrt_n;
        row.kappa = report.kappa;
        row.eps = report.eps;
        row.diag_ratio_max = report.diag_ratio_max;

        const int last = n - 1;
        const Eigen::VectorXd lift_diff =
            lift.lifted.matrix().col(last) - truth.matrix().col(last);
        row.localization = error_localization(lift_diff, grid, last * tau, tau);

        RunArtifacts artifacts;
        artifacts.n = n;
        artifacts.report = report;
        artifacts.x = grid.nodes();
        artifacts.reconstructed = lift.lifted.matrix().col(last);
        artifacts.truth = truth.matrix().col(last);
        artifacts.background = u0.matrix().col(last);
        artifacts.causal = causal.projected.matrix().col(last);

        record.rows.push_back(row);
        record.artifacts.push_back(std::move(artifacts));
    }

    // Rows must run from coarse to fine sampling (decreasing tau).
    std::stable_sort(record.rows.begin(), record.rows.end(),
                     [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.tau > b.tau; });

    std::vector<double> taus, lift_errors, best_errors;
    for (const auto& row : record.rows) {
        taus.push_back(row.tau);
        lift_errors.push_back(row.lift_error);
        best_errors.push_back(row.best_error);
    }
    const double max_lift =
        *std::max_element(lift_errors.begin(), lift_errors.end());
    if (record.rows.size() >= 3 && max_lift > 1e-8) {
        record.lift_fit = fit_rate(taus, lift_errors);
        record.projection_fit = fit_rate(taus, best_errors);
    }
    return record;
}

void emit_outputs(const ConvergenceRecord& record, const ExperimentConfig& cfg) {
    const std::filesystem::path dir(cfg.output_dir);

    std::vector<std::vector<double>> rows;
    for (const auto& row : record.rows) {
        rows.push_back({static_cast<double>(row.n), row.tau, row.lift_error, row.best_error,
                        row.lift_vs_projection, row.kappa, row.eps, row.diag_ratio_max,
                        row.localization});
    }
    write_table_csv(dir / "convergence.csv",
                    {"n", "tau", "lift_error", "best_error", "lift_vs_projection", "kappa",
                     "eps", "diag_ratio_max", "localization"},
                    rows);

    for (const auto& artifacts : record.artifacts) {
        const std::string suffix = "_n" + std::to_string(artifacts.n);
        write_bound_report(artifacts.report, dir / ("bound_report" + suffix + ".json"));

        std::vector<std::vector<double>> quartet(artifacts.x.size());
        std::vector<std::vector<double>> profile(artifacts.x.size());
        for (long i = 0; i < artifacts.x.size(); ++i) {
            quartet[i] = {artifacts.x(i), artifacts.reconstructed(i), artifacts.truth(i),
                          artifacts.background(i), artifacts.causal(i)};
            profile[i] = {artifacts.x(i), artifacts.reconstructed(i) - artifacts.truth(i),
                          artifacts.causal(i) - artifacts.truth(i)};
        }
        write_table_csv(dir / ("snapshots" + suffix + ".csv"),
                        {"x", "reconstructed", "true", "background", "causal_projection"},
                        quartet);
        write_table_csv(dir / ("error_profile" + suffix + ".csv"),
                        {"x", "lift_error", "projection_error"}, profile);
    }
}

}  // namespace waverom
