#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "waverom/experiment.hpp"
#include "waverom/io.hpp"

using namespace waverom;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    REQUIRE(in.is_open());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("potential spec parsing") {
    PotentialSpec zero = PotentialSpec::parse("zero");
    CHECK(zero.kind == PotentialSpec::Kind::Zero);

    PotentialSpec gauss = PotentialSpec::parse("gaussian:0.3,70,0.04");
    CHECK(gauss.kind == PotentialSpec::Kind::Gaussian);
    CHECK(gauss.amplitude == doctest::Approx(0.3));
    CHECK(gauss.center == doctest::Approx(70.0));
    CHECK(gauss.alpha == doctest::Approx(0.04));
    CHECK(PotentialSpec::parse(gauss.to_text()).center == doctest::Approx(70.0));

    CHECK_THROWS_AS(PotentialSpec::parse("gaussian:1,2"), ConfigError);
    CHECK_THROWS_AS(PotentialSpec::parse("mystery"), ConfigError);
}

TEST_CASE("config text round trip") {
    ExperimentConfig cfg = ExperimentConfig::preset("zero-q-desk");
    ExperimentConfig parsed = ExperimentConfig::parse_text(cfg.to_text());
    CHECK(parsed.name == cfg.name);
    CHECK(parsed.pulse == cfg.pulse);
    CHECK(parsed.fine_cell_count == cfg.fine_cell_count);
    CHECK(parsed.sampling == cfg.sampling);
    CHECK(parsed.final_time == doctest::Approx(cfg.final_time));
    CHECK_NOTHROW(parsed.validate());

    CHECK_THROWS_AS(ExperimentConfig::parse_text("nonsense = 1"), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::parse_text("pulse hat"), ConfigError);
}

TEST_CASE("config validation rejections") {
    ExperimentConfig cfg = ExperimentConfig::preset("zero-q-desk");

    SUBCASE("tau/h must be an even integer") {
        cfg.fine_cell_count = 1930;  // h no longer divides tau evenly
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("waves must not reach the far boundary") {
        cfg.final_time = 50.0;
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("step runs need an explicit tau list") {
        cfg.pulse = PulseKind::Step;
        cfg.tau_values.clear();
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("sampling must increase") {
        cfg.sampling = {16, 8, 32};
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
    SUBCASE("dt ratio bounded by CFL") {
        cfg.dt_rule = DtRule::parse("ratio:1.5");
        CHECK_THROWS_AS(cfg.validate(), ConfigError);
    }
}

TEST_CASE("presets validate and dump") {
    for (const std::string& name : ExperimentConfig::preset_names()) {
        ExperimentConfig cfg = ExperimentConfig::preset(name);
        CHECK(cfg.name == name);
        CHECK_NOTHROW(cfg.validate());
        CHECK(!cfg.to_text().empty());
    }
    CHECK_THROWS_AS(ExperimentConfig::preset("missing"), ConfigError);
}

TEST_CASE("fit_rate recovers synthetic slopes") {
    std::vector<double> tau = {1.0, 0.5, 0.25, 0.125};

    SUBCASE("square root decay") {
        std::vector<double> err;
        for (double t : tau) err.push_back(3.0 * std::sqrt(t));
        RateFit fit = fit_rate(tau, err);
        CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
        CHECK(fit.step_ratios.size() == 3);
        CHECK(fit.step_ratios[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("linear decay") {
        std::vector<double> err;
        for (double t : tau) err.push_back(0.7 * t);
        CHECK(fit_rate(tau, err).slope == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(fit_rate({1.0, 0.5}, {1.0, 0.5}), ConfigError);
        CHECK_THROWS_AS(fit_rate(tau, {1.0, 0.5, 0.0, 0.1}), ConfigError);
    }
}

TEST_CASE("zero potential study sits on the solver floor") {
    ExperimentConfig cfg = ExperimentConfig::preset("zero-q-desk");
    cfg.output_dir = (std::filesystem::temp_directory_path() / "waverom_zero_q").string();
    ConvergenceRecord record = run_experiment(cfg);

    REQUIRE(record.rows.size() == 3);
    for (const auto& row : record.rows) {
        CHECK(row.lift_error < 1e-6);
        CHECK(row.best_error < 1e-6);
        CHECK(row.lift_vs_projection < 1e-6);
    }
    CHECK_FALSE(record.lift_fit.has_value());  // fit skipped on the floor

    // rows sorted by decreasing tau
    CHECK(record.rows[0].tau > record.rows[1].tau);
    CHECK(record.rows[1].tau > record.rows[2].tau);
}

TEST_CASE("emit_outputs writes the documented schema deterministically") {
    ExperimentConfig cfg = ExperimentConfig::preset("zero-q-desk");
    const auto base = std::filesystem::temp_directory_path() / "waverom_emit";
    std::filesystem::remove_all(base);
    cfg.output_dir = (base / "a").string();
    ConvergenceRecord record = run_experiment(cfg);
    emit_outputs(record, cfg);

    const CsvTable table = read_table_csv(base / "a" / "convergence.csv");
    CHECK(table.header ==
          std::vector<std::string>{"n", "tau", "lift_error", "best_error", "lift_vs_projection",
                                   "kappa", "eps", "diag_ratio_max", "localization"});
    CHECK(table.rows.size() == 3);

    const CsvTable snaps = read_table_csv(base / "a" / "snapshots_n16.csv");
    CHECK(snaps.header == std::vector<std::string>{"x", "reconstructed", "true", "background",
                                                   "causal_projection"});
    CHECK(snaps.rows.size() == static_cast<size_t>(cfg.fine_cell_count + 1));
    CHECK(std::filesystem::exists(base / "a" / "bound_report_n16.json"));
    CHECK(std::filesystem::exists(base / "a" / "error_profile_n16.csv"));

    // Determinism: a second identical run produces identical bytes.
    cfg.output_dir = (base / "b").string();
    ConvergenceRecord again = run_experiment(cfg);
    emit_outputs(again, cfg);
    CHECK(slurp(base / "a" / "convergence.csv") == slurp(base / "b" / "convergence.csv"));
    CHECK(slurp(base / "a" / "snapshots_n16.csv") == slurp(base / "b" / "snapshots_n16.csv"));
    CHECK(slurp(base / "a" / "bound_report_n16.json") ==
          slurp(base / "b" / "bound_report_n16.json"));
}

TEST_CASE("rate fitting from an emitted CSV matches the in-memory fit") {
    std::vector<double> tau = {1.0, 0.5, 0.25};
    std::vector<double> err = {0.3, 0.21, 0.147};
    const auto dir = std::filesystem::temp_directory_path() / "waverom_rate";
    std::filesystem::create_directories(dir);
    write_table_csv(dir / "convergence.csv", {"n", "tau", "lift_error"},
                    {{8, tau[0], err[0]}, {16, tau[1], err[1]}, {32, tau[2], err[2]}});

    CsvTable table = read_table_csv(dir / "convergence.csv");
    std::vector<double> tau2, err2;
    for (const auto& row : table.rows) {
        tau2.push_back(row[table.column("tau")]);
        err2.push_back(row[table.column("lift_error")]);
    }
    CHECK(fit_rate(tau2, err2).slope == doctest::Approx(fit_rate(tau, err).slope).epsilon(1e-9));
}

TEST_CASE("multi-source configs are rejected by run_experiment") {
    ExperimentConfig cfg = ExperimentConfig::preset("mimo-desk");
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}

TEST_CASE("verify suite passes on the default preset") {
    VerifyReport report = verify_suite("default");
    for (const auto& check : report.checks) {
        INFO(check.name, ": ", check.detail, " measured=", check.measured);
        CHECK(check.pass);
    }
    CHECK(report.all_pass());
}
